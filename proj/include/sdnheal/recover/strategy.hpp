#pragma once

// Maps a diagnosed fault to concrete recovery orders.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdnheal/actuation.hpp"
#include "sdnheal/bndiag/builder.hpp"
#include "sdnheal/bndiag/diagnosis.hpp"
#include "sdnheal/error.hpp"
#include "sdnheal/json_util.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"

namespace sdnheal::recover {

/// Which concrete components a template expands to.
enum class TargetSelector {
  fault_target,        // the diagnosed component itself
  dependent_services,  // services whose dependency set contains it
  path_services,       // services whose path traverses it
};

inline std::string to_string(TargetSelector s) {
  switch (s) {
    case TargetSelector::fault_target: return "fault-target";
    case TargetSelector::dependent_services: return "dependent-services";
    case TargetSelector::path_services: return "path-services";
  }
  return "fault-target";
}

inline TargetSelector parse_selector(const std::string& s) {
  if (s == "fault-target") return TargetSelector::fault_target;
  if (s == "dependent-services") return TargetSelector::dependent_services;
  if (s == "path-services") return TargetSelector::path_services;
  throw ParseError("unknown target selector '" + s + "'");
}

struct ActionTemplate {
  ActionKind kind = ActionKind::open_repair_ticket;
  TargetSelector target = TargetSelector::fault_target;

  bool operator==(const ActionTemplate&) const = default;
};

struct StrategyEntry {
  ActionTemplate primary;
  std::optional<ActionTemplate> fallback;

  bool operator==(const StrategyEntry&) const = default;
};

/// Keys are fault-class names, optionally specialized by target node kind
/// ("physical-failure:controller"). The specialized key wins when present.
struct StrategyTable {
  std::map<std::string, std::vector<StrategyEntry>> entries;

  const std::vector<StrategyEntry>& lookup(FaultClass c, std::optional<NodeKind> kind) const {
    if (kind) {
      auto it = entries.find(sdnheal::to_string(c) + ":" + sdnheal::to_string(*kind));
      if (it != entries.end()) return it->second;
    }
    auto it = entries.find(sdnheal::to_string(c));
    if (it == entries.end()) throw InvalidArgument("strategy table has no entry for " + sdnheal::to_string(c));
    return it->second;
  }

  bool operator==(const StrategyTable&) const = default;
};

inline StrategyTable default_strategy_table() {
  using K = ActionKind;
  using T = TargetSelector;
  const ActionTemplate ticket{K::open_repair_ticket, T::fault_target};
  StrategyTable t;
  t.entries["physical-failure"] = {{{K::reroute, T::dependent_services}, ticket}};
  t.entries["physical-failure:controller"] = {{{K::controller_failover, T::fault_target}, std::nullopt}};
  t.entries["physical-failure:access-point"] = {{{K::load_balance_ap, T::fault_target}, ticket}};
  t.entries["openflow-agent-crash"] = {{{K::restart_openflow_agent, T::fault_target}, std::nullopt}};
  t.entries["service-fault"] = {{{K::restart_service, T::fault_target}, std::nullopt}};
  t.entries["controller-crash"] = {{{K::controller_failover, T::fault_target}, std::nullopt}};
  t.entries["interface-traffic-drop"] = {{{K::reroute, T::path_services}, ticket}};
  return t;
}

inline std::vector<std::string> validate_strategy_table(const StrategyTable& t) {
  std::vector<std::string> out;
  for (FaultClass c : kAllFaultClasses)
    if (!t.entries.count(sdnheal::to_string(c))) out.push_back("strategy table missing " + sdnheal::to_string(c));
  for (const auto& [key, list] : t.entries) {
    auto colon = key.find(':');
    try {
      parse_fault_class(key.substr(0, colon));
      if (colon != std::string::npos) parse_node_kind(key.substr(colon + 1));
    } catch (const ParseError&) {
      out.push_back("bad strategy key: " + key);
    }
    if (list.empty()) out.push_back("empty strategy for " + key);
  }
  return out;
}

inline json template_to_json(const ActionTemplate& a) {
  return {{"action", sdnheal::to_string(a.kind)}, {"target", to_string(a.target)}};
}

inline ActionTemplate template_from_json(const json& j) {
  return {parse_action_kind(jsonio::get<std::string>(j, "action", "action template")),
          parse_selector(jsonio::get_or<std::string>(j, "target", "fault-target", "action template"))};
}

inline json strategy_table_to_json(const StrategyTable& t) {
  json out = json::object();
  for (const auto& [key, list] : t.entries) {
    json arr = json::array();
    for (const auto& e : list) {
      json entry = template_to_json(e.primary);
      if (e.fallback) entry["fallback"] = template_to_json(*e.fallback);
      arr.push_back(entry);
    }
    out[key] = arr;
  }
  return out;
}

/// Keys in the document replace the corresponding default entries.
inline StrategyTable strategy_table_from_json(const json& j, StrategyTable base = default_strategy_table()) {
  if (!j.is_object()) throw ParseError("strategy table: expected an object");
  for (const auto& [key, list] : j.items()) {
    if (!list.is_array()) throw ParseError("strategy table: '" + key + "' must be an array");
    std::vector<StrategyEntry> entries;
    for (const auto& e : list) {
      StrategyEntry se{template_from_json(e), std::nullopt};
      if (e.contains("fallback")) se.fallback = template_from_json(e.at("fallback"));
      entries.push_back(se);
    }
    base.entries[key] = std::move(entries);
  }
  if (auto v = validate_strategy_table(base); !v.empty()) throw ValidationError(std::move(v));
  return base;
}

/// A planned order with the order to issue if it fails.
struct PlannedAction {
  RecoveryAction action;
  std::optional<RecoveryAction> fallback;

  bool operator==(const PlannedAction&) const = default;
};

using Plan = std::vector<PlannedAction>;

/// Services hit by a fault on `target`: the service itself for service
/// faults, otherwise every service whose dependency set contains the target.
inline std::vector<ComponentId> affected_services(const net::Topology& t, const bn::FaultRef& f) {
  if (f.fault_class == FaultClass::service_fault) return {f.target};
  std::vector<ComponentId> out;
  for (const auto& s : t.services)
    if (net::dependency_set(t, s.id).count(f.target)) out.push_back(s.id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<RecoveryAction> instantiate(const ActionTemplate& tpl, const net::Topology& t,
                                               const ComponentId& target) {
  std::vector<ComponentId> targets;
  switch (tpl.target) {
    case TargetSelector::fault_target:
      targets = {target};
      break;
    case TargetSelector::dependent_services:
      for (const auto& s : t.services)
        if (net::dependency_set(t, s.id).count(target)) targets.push_back(s.id);
      break;
    case TargetSelector::path_services:
      for (const auto& s : t.services)
        if (std::find(s.path.begin(), s.path.end(), target) != s.path.end()) targets.push_back(s.id);
      break;
  }
  std::sort(targets.begin(), targets.end());

  std::vector<RecoveryAction> out;
  for (const auto& id : targets) {
    RecoveryAction a{tpl.kind, id, {}};
    if (tpl.kind == ActionKind::reroute) a.params["avoid"] = {target};
    if (tpl.kind == ActionKind::load_balance_ap) {
      const net::Node* dest = nullptr;
      for (const auto& n : t.nodes)
        if (n.kind == NodeKind::access_point && n.id != id && n.state == ComponentState::up &&
            (!dest || n.id < dest->id))
          dest = &n;
      if (!dest) continue;
      std::set<ComponentId> clients;
      for (const auto& s : t.services)
        if (std::find(s.path.begin(), s.path.end(), id) != s.path.end()) clients.insert(s.clients.begin(), s.clients.end());
      a.params["destination"] = {dest->id};
      a.params["clients"] = {clients.begin(), clients.end()};
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// Instantiates the table entry for the top-ranked fault. A template that
/// expands to nothing (no dependent services, no spare access point) hands
/// over to its fallback.
inline Plan select_strategy(const bn::Diagnosis& d, const net::Topology& t, const StrategyTable& table) {
  if (!d.actionable()) throw InconclusiveDiagnosis("cannot plan from an inconclusive diagnosis");
  auto fault = bn::parse_fault_id(d.top().first);
  if (!fault) throw InvalidArgument("not a fault variable id: " + d.top().first);
  if (!t.category(fault->target)) throw NotFoundError("diagnosed component not in topology: " + fault->target);
  std::optional<NodeKind> kind;
  if (const net::Node* n = t.find_node(fault->target)) kind = n->kind;

  Plan plan;
  for (const auto& entry : table.lookup(fault->fault_class, kind)) {
    auto primaries = detail::instantiate(entry.primary, t, fault->target);
    std::vector<RecoveryAction> fallbacks;
    if (entry.fallback) fallbacks = detail::instantiate(*entry.fallback, t, fault->target);
    if (primaries.empty()) {
      for (auto& f : fallbacks) plan.push_back({std::move(f), std::nullopt});
      continue;
    }
    for (auto& p : primaries)
      plan.push_back({std::move(p), fallbacks.empty() ? std::nullopt : std::optional(fallbacks.front())});
  }
  return plan;
}

inline json plan_to_json(const Plan& plan) {
  json out = json::array();
  for (const auto& step : plan) {
    json e = {{"action", action_to_json(step.action)}};
    if (step.fallback) e["fallback"] = action_to_json(*step.fallback);
    out.push_back(e);
  }
  return out;
}

inline Plan plan_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("plan: expected an array");
  Plan plan;
  for (const auto& e : j) {
    PlannedAction step{action_from_json(jsonio::field(e, "action", "plan step")), std::nullopt};
    if (e.contains("fallback")) step.fallback = action_from_json(e.at("fallback"));
    plan.push_back(std::move(step));
  }
  return plan;
}

}  // namespace sdnheal::recover
