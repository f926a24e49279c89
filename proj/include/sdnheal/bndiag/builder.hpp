#pragma once

// Derives the diagnosis network from the controller's view of the topology.
// Edges mirror the simulator's alarm generation: an edge is "direct" when the
// fault itself emits that symptom, "indirect" when it only plausibly causes it.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"

namespace sdnheal::bn {

struct BnParams {
  double prior_physical = 0.01;
  double prior_agent = 0.02;
  double prior_service = 0.02;
  double prior_controller = 0.005;
  double prior_drop = 0.01;
  double p_direct = 0.95;
  double p_indirect = 0.8;
  double leak = 0.001;
  double threshold = 0.5;
  bool include_hosts = false;
  std::size_t max_parents = kDefaultMaxParents;

  bool operator==(const BnParams&) const = default;
};

// ---- variable naming -------------------------------------------------------

inline std::string_view fault_prefix(FaultClass c) {
  switch (c) {
    case FaultClass::physical_failure: return "F_phys";
    case FaultClass::service_fault: return "F_svc";
    case FaultClass::openflow_agent_crash: return "F_agent";
    case FaultClass::interface_traffic_drop: return "F_drop";
    case FaultClass::controller_crash: return "F_ctrl";
  }
  throw InvalidArgument("fault class out of range");
}

inline std::string fault_id(FaultClass c, const ComponentId& target) {
  return std::string(fault_prefix(c)) + "(" + target + ")";
}

inline std::string symptom_id(Symptom s, const ComponentId& emitter) {
  return "Y_" + to_string(s) + "(" + emitter + ")";
}

struct FaultRef {
  FaultClass fault_class;
  ComponentId target;
};

/// Inverse of fault_id(); nullopt for ids not in that form.
inline std::optional<FaultRef> parse_fault_id(std::string_view id) {
  auto open = id.find('(');
  if (open == std::string_view::npos || id.size() < open + 2 || id.back() != ')') return std::nullopt;
  auto prefix = id.substr(0, open);
  for (FaultClass c : kAllFaultClasses)
    if (fault_prefix(c) == prefix) return FaultRef{c, std::string(id.substr(open + 1, id.size() - open - 2))};
  return std::nullopt;
}

// ---- construction ----------------------------------------------------------

inline json bn_params_to_json(const BnParams& p) {
  return {{"priors",
           {{"physical", p.prior_physical},
            {"agent", p.prior_agent},
            {"service", p.prior_service},
            {"controller", p.prior_controller},
            {"drop", p.prior_drop}}},
          {"p-direct", p.p_direct},
          {"p-indirect", p.p_indirect},
          {"leak", p.leak},
          {"threshold", p.threshold},
          {"include-hosts", p.include_hosts},
          {"max-parents", p.max_parents}};
}

/// Missing keys keep their defaults.
inline BnParams bn_params_from_json(const json& j) {
  BnParams p;
  const char* ctx = "params";
  if (j.contains("priors")) {
    const json& pr = j.at("priors");
    p.prior_physical = jsonio::get_or(pr, "physical", p.prior_physical, ctx);
    p.prior_agent = jsonio::get_or(pr, "agent", p.prior_agent, ctx);
    p.prior_service = jsonio::get_or(pr, "service", p.prior_service, ctx);
    p.prior_controller = jsonio::get_or(pr, "controller", p.prior_controller, ctx);
    p.prior_drop = jsonio::get_or(pr, "drop", p.prior_drop, ctx);
  }
  p.p_direct = jsonio::get_or(j, "p-direct", p.p_direct, ctx);
  p.p_indirect = jsonio::get_or(j, "p-indirect", p.p_indirect, ctx);
  p.leak = jsonio::get_or(j, "leak", p.leak, ctx);
  p.threshold = jsonio::get_or(j, "threshold", p.threshold, ctx);
  p.include_hosts = jsonio::get_or(j, "include-hosts", p.include_hosts, ctx);
  p.max_parents = jsonio::get_or(j, "max-parents", p.max_parents, ctx);
  return p;
}

inline std::vector<std::string> validate_bn_params(const BnParams& p) {
  std::vector<std::string> out;
  auto open_unit = [&](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) out.push_back(std::string(name) + " must lie in (0,1)");
  };
  auto closed_unit = [&](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) out.push_back(std::string(name) + " must lie in [0,1]");
  };
  open_unit(p.prior_physical, "priors.physical");
  open_unit(p.prior_agent, "priors.agent");
  open_unit(p.prior_service, "priors.service");
  open_unit(p.prior_controller, "priors.controller");
  open_unit(p.prior_drop, "priors.drop");
  open_unit(p.threshold, "threshold");
  closed_unit(p.p_direct, "p-direct");
  closed_unit(p.p_indirect, "p-indirect");
  closed_unit(p.leak, "leak");
  if (p.max_parents < 1) out.push_back("max-parents must be positive");
  return out;
}

namespace detail {

class NetBuilder {
 public:
  explicit NetBuilder(const BnParams& p) : p_(p) {}

  void fault(FaultClass c, const ComponentId& target, double prior) {
    auto id = fault_id(c, target);
    vars_.push_back({id, VarKind::fault, target, c, std::nullopt});
    priors_[id] = prior;
  }

  void symptom(Symptom s, const ComponentId& emitter) {
    auto id = symptom_id(s, emitter);
    vars_.push_back({id, VarKind::symptom, emitter, std::nullopt, s});
    edges_[id];
  }

  /// Adds an edge if the fault exists. A repeated edge keeps the stronger strength.
  void edge(Symptom s, const ComponentId& emitter, FaultClass c, const ComponentId& target, bool direct) {
    auto parent = fault_id(c, target);
    if (!priors_.count(parent)) return;
    double q = direct ? p_.p_direct : p_.p_indirect;
    auto& slot = edges_[symptom_id(s, emitter)][parent];
    slot = std::max(slot, q);
  }

  BayesNet finish() {
    std::vector<NoisyOrCpt> cpts;
    for (auto& [child, parents] : edges_) {
      if (parents.size() > p_.max_parents)
        throw CapacityError("parent cap exceeded: " + child + " has " + std::to_string(parents.size()) +
                            " parents (cap " + std::to_string(p_.max_parents) + ")");
      NoisyOrCpt c{child, {}, {}, p_.leak};
      for (const auto& [parent, q] : parents) {  // std::map: parents in id order
        c.parents.push_back(parent);
        c.link_probabilities.push_back(q);
      }
      cpts.push_back(std::move(c));
    }
    return BayesNet(std::move(vars_), std::move(priors_), std::move(cpts), p_.max_parents);
  }

 private:
  const BnParams& p_;
  std::vector<BnVariable> vars_;
  std::map<std::string, double> priors_;
  std::map<std::string, std::map<std::string, double>> edges_;
};

}  // namespace detail

/// Builds the fault -> symptom network for a valid topology. Deterministic:
/// equal inputs give id-for-id identical networks.
inline BayesNet build_bn(const net::Topology& t, const BnParams& params = {}) {
  if (auto v = validate_bn_params(params); !v.empty()) throw ValidationError(std::move(v));
  using FC = FaultClass;
  using S = Symptom;
  auto modeled = [&](const net::Node& n) { return params.include_hosts || n.kind != NodeKind::host; };

  detail::NetBuilder b(params);
  for (const auto& n : t.nodes) {
    if (!modeled(n)) continue;
    b.fault(FC::physical_failure, n.id, params.prior_physical);
    if (n.kind == NodeKind::openflow_switch) b.fault(FC::openflow_agent_crash, n.id, params.prior_agent);
    if (n.kind == NodeKind::controller) b.fault(FC::controller_crash, n.id, params.prior_controller);
  }
  for (const auto& l : t.links) {
    b.fault(FC::physical_failure, l.id, params.prior_physical);
    b.fault(FC::interface_traffic_drop, l.id, params.prior_drop);
  }
  for (const auto& s : t.services) b.fault(FC::service_fault, s.id, params.prior_service);

  for (const auto& l : t.links) {
    b.symptom(S::link_down, l.id);
    b.edge(S::link_down, l.id, FC::physical_failure, l.id, true);
    b.symptom(S::traffic_drop, l.id);
    b.edge(S::traffic_drop, l.id, FC::physical_failure, l.id, true);
    b.edge(S::traffic_drop, l.id, FC::interface_traffic_drop, l.id, true);
    for (const auto* end : {&l.a, &l.b}) {
      b.edge(S::link_down, l.id, FC::physical_failure, *end, true);
      b.edge(S::traffic_drop, l.id, FC::physical_failure, *end, false);
    }
  }
  const net::Node* controller = t.controller();
  for (const auto& n : t.nodes) {
    if (!modeled(n)) continue;
    b.symptom(S::node_unreachable, n.id);
    b.edge(S::node_unreachable, n.id, FC::physical_failure, n.id, true);
    if (n.kind == NodeKind::openflow_switch) {
      b.symptom(S::of_session_lost, n.id);
      b.edge(S::of_session_lost, n.id, FC::openflow_agent_crash, n.id, true);
      if (controller) b.edge(S::of_session_lost, n.id, FC::controller_crash, controller->id, true);
      b.edge(S::of_session_lost, n.id, FC::physical_failure, n.id, false);
    }
  }
  for (const auto& s : t.services) {
    b.symptom(S::service_down, s.id);
    b.symptom(S::sla_violation, s.id);
    b.edge(S::service_down, s.id, FC::service_fault, s.id, true);
    b.edge(S::sla_violation, s.id, FC::service_fault, s.id, false);
    // The controller is in the dependency set but installed flows survive its
    // loss, so it contributes no service-level parent.
    for (const auto& c : net::dependency_set(t, s.id)) {
      bool on_path = std::find(s.path.begin(), s.path.end(), c) != s.path.end();
      if (!on_path) continue;
      b.edge(S::service_down, s.id, FC::physical_failure, c, true);
      b.edge(S::sla_violation, s.id, FC::physical_failure, c, false);
      b.edge(S::service_down, s.id, FC::openflow_agent_crash, c, false);
      b.edge(S::sla_violation, s.id, FC::openflow_agent_crash, c, false);
      b.edge(S::sla_violation, s.id, FC::interface_traffic_drop, c, true);
    }
  }
  return b.finish();
}

}  // namespace sdnheal::bn
