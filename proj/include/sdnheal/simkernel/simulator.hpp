#pragma once

// Discrete-time stand-in for the managed network, its NMS and its Service
// Manager. Every operation takes a state by value and returns the successor,
// so a run is a fold over ticks and fully reproducible from the seed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnheal/actuation.hpp"
#include "sdnheal/alarmpipe/alarm.hpp"
#include "sdnheal/error.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"
#include "sdnheal/simkernel/fault.hpp"
#include "sdnheal/simkernel/rng.hpp"
#include "sdnheal/simkernel/scenario.hpp"

namespace sdnheal::sim {

using FaultKey = std::pair<ComponentId, FaultClass>;

struct PendingClear {
  int ready_tick = 0;
  ComponentId target;
  FaultClass fault_class = FaultClass::physical_failure;

  auto operator<=>(const PendingClear&) const = default;
  bool operator==(const PendingClear&) const = default;
};

struct RepairTicket {
  ComponentId target;
  int ready_tick = 0;

  auto operator<=>(const RepairTicket&) const = default;
  bool operator==(const RepairTicket&) const = default;
};

struct SimState {
  int tick = 0;
  net::Topology topology;
  std::map<FaultKey, int> active_faults;  // fault -> tick it became active
  std::set<RepairTicket> repair_tickets;
  std::set<PendingClear> pending_clears;
  Engine rng;

  std::vector<FaultEvent> schedule;
  std::size_t next_fault = 0;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  int horizon = 0;
  int repair_delay = 5;

  bool has_fault(const ComponentId& target, FaultClass c) const { return active_faults.count({target, c}) > 0; }

  bool operator==(const SimState&) const = default;
};

struct StepResult {
  SimState state;
  std::vector<alarms::RawAlarm> alarms;
};

struct ActionResult {
  SimState state;
  ActionOutcome outcome;
};

inline constexpr const char* kNmsDialect = "sim-nms";
inline constexpr const char* kServiceManagerDialect = "sim-sm";

/// How the simulated NMS / Service Manager spell a symptom on the wire.
inline std::pair<std::string, std::string> sim_encoding(Symptom s) {
  switch (s) {
    case Symptom::link_down: return {kNmsDialect, "LINK_DOWN"};
    case Symptom::node_unreachable: return {kNmsDialect, "NODE_UNREACHABLE"};
    case Symptom::of_session_lost: return {kNmsDialect, "OF_SESSION_LOST"};
    case Symptom::traffic_drop: return {kNmsDialect, "PKT_DROP"};
    case Symptom::service_down: return {kServiceManagerDialect, "SERVICE_DOWN"};
    case Symptom::sla_violation: return {kServiceManagerDialect, "SLA_BREACH"};
  }
  throw InvalidArgument("symptom out of range");
}

inline alarms::RawAlarm encode_raw(const alarms::AlarmKey& key, int tick) {
  auto [dialect, event] = sim_encoding(key.symptom);
  return {dialect, {{"emitter", key.emitter}, {"event", event}}, tick};
}

/// Every (emitter, symptom) pair the monitors of this topology can report.
/// Hosts are not monitored for reachability.
inline std::vector<alarms::AlarmKey> symptom_vocabulary(const net::Topology& t) {
  std::vector<alarms::AlarmKey> out;
  for (const auto& l : t.links) {
    out.push_back({l.id, Symptom::link_down});
    out.push_back({l.id, Symptom::traffic_drop});
  }
  for (const auto& n : t.nodes) {
    if (n.kind == NodeKind::host) continue;
    out.push_back({n.id, Symptom::node_unreachable});
    if (n.kind == NodeKind::openflow_switch) out.push_back({n.id, Symptom::of_session_lost});
  }
  for (const auto& s : t.services) {
    out.push_back({s.id, Symptom::service_down});
    out.push_back({s.id, Symptom::sla_violation});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline bool path_contains(const net::Service& s, const ComponentId& c) {
  return std::find(s.path.begin(), s.path.end(), c) != s.path.end();
}

inline ComponentState true_service_state(const SimState& st, const net::Service& s) {
  if (st.has_fault(s.id, FaultClass::service_fault)) return ComponentState::down;
  for (const auto& c : s.path) {
    const net::Node* n = st.topology.find_node(c);
    const net::Link* l = st.topology.find_link(c);
    if ((n && n->state == ComponentState::down) || (l && l->state == ComponentState::down))
      return ComponentState::down;
  }
  for (const auto& c : s.path)
    if (st.has_fault(c, FaultClass::interface_traffic_drop)) return ComponentState::degraded;
  return ComponentState::up;
}

inline void refresh_services(SimState& st) {
  for (auto& s : st.topology.services) s.state = true_service_state(st, s);
}

inline void set_state(SimState& st, const ComponentId& c, ComponentState s) {
  if (auto* n = st.topology.find_node(c)) n->state = s;
  if (auto* l = st.topology.find_link(c)) l->state = s;
}

inline void clear_fault(SimState& st, const ComponentId& target, FaultClass c) {
  st.active_faults.erase({target, c});
  if (c == FaultClass::physical_failure) set_state(st, target, ComponentState::up);
}

inline void add_fault(SimState& st, const FaultEvent& f) {
  check_compatible(st.topology, f);
  st.active_faults.try_emplace({f.target, f.fault_class}, st.tick);
  if (f.fault_class == FaultClass::physical_failure) set_state(st, f.target, ComponentState::down);
}

}  // namespace detail

inline SimState init_sim(const Scenario& s) {
  if (auto v = validate_scenario(s); !v.empty()) throw ValidationError(std::move(v));
  SimState st;
  st.topology = s.topology;
  for (auto& n : st.topology.nodes) n.state = ComponentState::up;
  for (auto& l : st.topology.links) l.state = ComponentState::up;
  for (auto& v : st.topology.services) v.state = ComponentState::up;
  st.rng.seed(s.seed);
  st.schedule = s.faults;
  st.noise = s.noise;
  st.seed = s.seed;
  st.horizon = s.horizon;
  st.repair_delay = s.repair_delay;
  return st;
}

/// Activates a fault now. Re-injecting an active fault changes nothing.
inline SimState inject_fault(SimState st, const FaultEvent& f) {
  detail::add_fault(st, f);
  detail::refresh_services(st);
  return st;
}

/// Symptoms the active faults produce, before any noise.
inline std::set<alarms::AlarmKey> generative_symptoms(const SimState& st) {
  std::set<alarms::AlarmKey> out;
  const auto& t = st.topology;
  auto services_through = [&](const ComponentId& c, Symptom symptom) {
    for (const auto& s : t.services)
      if (detail::path_contains(s, c)) out.insert({s.id, symptom});
  };
  for (const auto& [key, since] : st.active_faults) {
    const auto& [target, cls] = key;
    switch (cls) {
      case FaultClass::physical_failure:
        if (t.find_link(target)) {
          out.insert({target, Symptom::link_down});
          out.insert({target, Symptom::traffic_drop});
        } else {
          out.insert({target, Symptom::node_unreachable});
          for (const auto& l : t.links)
            if (l.touches(target)) out.insert({l.id, Symptom::link_down});
        }
        services_through(target, Symptom::service_down);
        break;
      case FaultClass::openflow_agent_crash:
        out.insert({target, Symptom::of_session_lost});
        break;
      case FaultClass::interface_traffic_drop:
        out.insert({target, Symptom::traffic_drop});
        services_through(target, Symptom::sla_violation);
        break;
      case FaultClass::service_fault:
        out.insert({target, Symptom::service_down});
        break;
      case FaultClass::controller_crash:
        for (const auto& n : t.nodes)
          if (n.kind == NodeKind::openflow_switch) out.insert({n.id, Symptom::of_session_lost});
        break;
    }
  }
  return out;
}

/// Advances one tick: settles scheduled clears and repairs, injects due
/// scenario faults, then reports the symptoms of everything still active.
inline StepResult step(SimState st) {
  if (st.tick >= st.horizon) throw InvalidArgument("horizon exceeded at tick " + std::to_string(st.tick));
  ++st.tick;

  while (!st.pending_clears.empty() && st.pending_clears.begin()->ready_tick <= st.tick) {
    auto c = *st.pending_clears.begin();
    st.pending_clears.erase(st.pending_clears.begin());
    detail::clear_fault(st, c.target, c.fault_class);
  }
  for (auto it = st.repair_tickets.begin(); it != st.repair_tickets.end();) {
    if (it->ready_tick > st.tick) {
      ++it;
      continue;
    }
    for (auto f = st.active_faults.begin(); f != st.active_faults.end();)
      f = f->first.first == it->target ? st.active_faults.erase(f) : std::next(f);
    detail::set_state(st, it->target, ComponentState::up);
    it = st.repair_tickets.erase(it);
  }
  while (st.next_fault < st.schedule.size() && st.schedule[st.next_fault].at_tick <= st.tick)
    detail::add_fault(st, st.schedule[st.next_fault++]);
  detail::refresh_services(st);

  std::set<alarms::AlarmKey> keys = generative_symptoms(st);
  if (st.noise.mode == NoiseMode::stochastic) {
    for (auto it = keys.begin(); it != keys.end();)
      it = uniform01(st.rng) < st.noise.alarm_loss_probability ? keys.erase(it) : std::next(it);
    int spurious = poisson(st.rng, st.noise.spurious_alarm_rate);
    auto vocabulary = symptom_vocabulary(st.topology);
    for (int i = 0; i < spurious && !vocabulary.empty(); ++i)
      keys.insert(vocabulary[uniform_index(st.rng, vocabulary.size())]);
  }

  StepResult out;
  out.alarms.reserve(keys.size());
  for (const auto& k : keys) out.alarms.push_back(encode_raw(k, st.tick));
  out.state = std::move(st);
  return out;
}

/// What the Service Manager reports for a service. In stochastic mode the
/// reading flips with the alarm-loss probability (keyed on seed and tick, so
/// repeated reads agree).
inline ComponentState observe_service(const SimState& st, const ComponentId& v) {
  const net::Service* s = st.topology.find_service(v);
  if (!s) throw NotFoundError("unknown service: " + v);
  ComponentState truth = detail::true_service_state(st, *s);
  if (st.noise.mode == NoiseMode::stochastic &&
      keyed_uniform01(st.seed, st.tick, "observe:" + v) < st.noise.alarm_loss_probability)
    return truth == ComponentState::up ? ComponentState::down : ComponentState::up;
  return truth;
}

namespace detail {

inline void check_action_target(const net::Topology& t, const RecoveryAction& a) {
  if (!t.category(a.target)) throw NotFoundError("unknown action target: " + a.target);
  const net::Node* n = t.find_node(a.target);
  bool ok = false;
  switch (a.kind) {
    case ActionKind::reroute:
    case ActionKind::restart_service:
      ok = t.find_service(a.target) != nullptr;
      break;
    case ActionKind::restart_openflow_agent:
      ok = n && n->kind == NodeKind::openflow_switch;
      break;
    case ActionKind::controller_failover:
      ok = n && n->kind == NodeKind::controller;
      break;
    case ActionKind::load_balance_ap:
      ok = n && n->kind == NodeKind::access_point;
      break;
    case ActionKind::open_repair_ticket:
      ok = n || t.find_link(a.target);
      break;
  }
  if (!ok) throw InvalidArgument(to_string(a.kind) + " cannot target " + a.target);
}

inline std::vector<std::string> param(const RecoveryAction& a, const std::string& key) {
  auto it = a.params.find(key);
  return it == a.params.end() ? std::vector<std::string>{} : it->second;
}

inline std::string join(const std::vector<ComponentId>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

/// Replaces the service's path with the shortest alternative; false if none.
inline bool reroute_service(SimState& st, const ComponentId& service, const std::set<ComponentId>& avoid,
                            std::string& detail) {
  net::Service* s = st.topology.find_service(service);
  auto path = net::find_path(st.topology, s->path.front(), s->path.back(), avoid);
  if (!path) {
    detail = "no alternative path";
    return false;
  }
  s->path = *path;
  detail = "path " + join(*path, "-");
  return true;
}

}  // namespace detail

/// Applies one recovery order. Infeasible orders come back as failure
/// outcomes; malformed ones (unknown or incompatible target) throw.
inline ActionResult apply_action(SimState st, const RecoveryAction& a) {
  detail::check_action_target(st.topology, a);
  ActionOutcome outcome{a, OutcomeStatus::success, ""};
  auto fail = [&](std::string why) {
    outcome.status = OutcomeStatus::failure;
    outcome.detail = std::move(why);
  };
  const int next = st.tick + 1;

  switch (a.kind) {
    case ActionKind::reroute: {
      auto avoid_list = detail::param(a, "avoid");
      std::set<ComponentId> avoid(avoid_list.begin(), avoid_list.end());
      std::string why;
      if (!detail::reroute_service(st, a.target, avoid, why)) {
        fail(why);
      } else {
        outcome.detail = why;
      }
      break;
    }
    case ActionKind::restart_service:
      if (st.has_fault(a.target, FaultClass::service_fault))
        st.pending_clears.insert({next, a.target, FaultClass::service_fault});
      outcome.detail = "service restarts at tick " + std::to_string(next);
      break;
    case ActionKind::restart_openflow_agent:
      if (st.has_fault(a.target, FaultClass::openflow_agent_crash))
        st.pending_clears.insert({next, a.target, FaultClass::openflow_agent_crash});
      outcome.detail = "agent restarts at tick " + std::to_string(next);
      break;
    case ActionKind::controller_failover:
      // Atomic swap to the standby: both a crashed process and dead hardware are replaced.
      for (auto c : {FaultClass::controller_crash, FaultClass::physical_failure})
        if (st.has_fault(a.target, c)) st.pending_clears.insert({next, a.target, c});
      outcome.detail = "standby controller active at tick " + std::to_string(next);
      break;
    case ActionKind::load_balance_ap: {
      auto dest_list = detail::param(a, "destination");
      if (dest_list.size() != 1) {
        fail("load-balance-ap needs exactly one destination");
        break;
      }
      const ComponentId& dest = dest_list.front();
      const net::Node* d = st.topology.find_node(dest);
      if (!d || d->kind != NodeKind::access_point || d->id == a.target || d->state != ComponentState::up) {
        fail("destination is not an available access point: " + dest);
        break;
      }
      auto clients = detail::param(a, "clients");
      for (const auto& c : clients) {
        if (!net::is_host(st.topology, c)) throw InvalidArgument("load-balance-ap client is not a host: " + c);
        bool attached = std::any_of(st.topology.links.begin(), st.topology.links.end(),
                                    [&](const net::Link& l) { return l.connects(c, dest); });
        if (!attached) st.topology.links.push_back({c + "~" + dest, c, dest, ComponentState::up, false});
      }
      std::vector<ComponentId> moved;
      for (const auto& s : st.topology.services) {
        if (!detail::path_contains(s, a.target)) continue;
        bool served = std::any_of(clients.begin(), clients.end(), [&](const auto& c) { return s.clients.count(c); });
        if (served) moved.push_back(s.id);
      }
      for (const auto& v : moved) {
        std::string why;
        if (!detail::reroute_service(st, v, {a.target}, why)) {
          fail("cannot move " + v + ": " + why);
          break;
        }
      }
      if (outcome.ok()) outcome.detail = "clients moved to " + dest;
      break;
    }
    case ActionKind::open_repair_ticket: {
      int ready = st.tick + st.repair_delay;
      st.repair_tickets.insert({a.target, ready});
      outcome.detail = "repair scheduled at tick " + std::to_string(ready);
      break;
    }
  }
  detail::refresh_services(st);
  return {std::move(st), std::move(outcome)};
}

}  // namespace sdnheal::sim
