#pragma once

// Shared fixtures: the T1 network, BN2, and seeded random generators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/netmodel/topology.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"
#include "sdnheal/simkernel/scenario.hpp"

namespace sdnheal::testing {

inline net::Topology t1() {
  using NK = NodeKind;
  net::Topology t;
  t.nodes = {{"c0", NK::controller, ComponentState::up},      {"s1", NK::openflow_switch, ComponentState::up},
             {"s2", NK::openflow_switch, ComponentState::up}, {"s3", NK::openflow_switch, ComponentState::up},
             {"h1", NK::host, ComponentState::up},            {"h2", NK::host, ComponentState::up}};
  t.links = {{"l1", "s1", "s2", ComponentState::up, false},
             {"l2", "s1", "s3", ComponentState::up, false},
             {"l3", "s3", "s2", ComponentState::up, false},
             {"la", "h1", "s1", ComponentState::up, false},
             {"lb", "h2", "s2", ComponentState::up, false}};
  t.services = {{"v1", ServiceKind::streaming, {"h1", "la", "s1", "l1", "s2", "lb", "h2"}, {"h1"}, ComponentState::up}};
  return t;
}

inline sim::Scenario t1_scenario(std::vector<sim::FaultEvent> faults, std::uint64_t seed = 7, int horizon = 10) {
  sim::Scenario s;
  s.name = "t1";
  s.topology = t1();
  s.faults = std::move(faults);
  s.seed = seed;
  s.horizon = horizon;
  return s;
}

inline bn::BnVariable fault_var(const std::string& id) { return {id, bn::VarKind::fault, "", std::nullopt, std::nullopt}; }
inline bn::BnVariable symptom_var(const std::string& id) {
  return {id, bn::VarKind::symptom, "", std::nullopt, std::nullopt};
}

/// Faults A, B (prior 0.01); Y with parents A, B (0.9 each). With `with_z`,
/// a second symptom Z whose only parent is A with link probability 1 and leak 0.
inline bn::BayesNet bn2(double leak = 0.001, bool with_z = false) {
  std::vector<bn::BnVariable> vars{fault_var("A"), fault_var("B"), symptom_var("Y")};
  std::vector<bn::NoisyOrCpt> cpts{{"Y", {"A", "B"}, {0.9, 0.9}, leak}};
  if (with_z) {
    vars.push_back(symptom_var("Z"));
    cpts.push_back({"Z", {"A"}, {1.0}, 0.0});
  }
  return bn::BayesNet(vars, {{"A", 0.01}, {"B", 0.01}}, cpts);
}

/// Random noisy-OR network with at most `max_vars` variables and `max_parents`
/// parents per symptom; parameters uniform in [0.05, 0.95], leaks in [0, 0.05].
/// Each symptom is observed true, observed false, or left unobserved.
struct RandomBn {
  bn::BayesNet net;
  bn::EvidenceMap evidence;
};

inline RandomBn random_bn(std::uint64_t seed, std::size_t max_vars = 12, std::size_t max_parents = 4) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  const std::size_t nf = pick(1, max_vars - 1);
  const std::size_t ns = pick(1, max_vars - nf);
  std::vector<bn::BnVariable> vars;
  std::map<std::string, double> priors;
  std::vector<std::string> faults;
  for (std::size_t i = 0; i < nf; ++i) {
    faults.push_back("F" + std::to_string(i));
    vars.push_back(fault_var(faults.back()));
    priors[faults.back()] = uni(0.05, 0.95);
  }
  std::vector<bn::NoisyOrCpt> cpts;
  RandomBn out;
  for (std::size_t j = 0; j < ns; ++j) {
    std::string id = "Y" + std::to_string(j);
    vars.push_back(symptom_var(id));
    std::vector<std::string> parents = faults;
    std::shuffle(parents.begin(), parents.end(), rng);
    parents.resize(pick(1, std::min(max_parents, nf)));
    std::vector<double> link;
    for (std::size_t k = 0; k < parents.size(); ++k) link.push_back(uni(0.05, 0.95));
    cpts.push_back({id, parents, link, uni(0.0, 0.05)});
    switch (pick(0, 2)) {
      case 0: out.evidence[id] = true; break;
      case 1: out.evidence[id] = false; break;
      default: break;
    }
  }
  out.net = bn::BayesNet(vars, priors, cpts);
  return out;
}

/// Random valid topology with at most `max_nodes` nodes. Service paths cross at
/// most four infrastructure nodes so every symptom stays under the parent cap.
/// With `fill`, idle hosts are added until the node count reaches `max_nodes`.
inline net::Topology random_topology(std::uint64_t seed, std::size_t max_nodes = 50, std::size_t services = 0,
                                     bool fill = false) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  net::Topology t;
  t.nodes.push_back({"c0", NodeKind::controller, ComponentState::up});

  const std::size_t n_infra = pick(3, std::max<std::size_t>(3, (max_nodes - 1) * 3 / 5));
  std::vector<std::string> infra;
  for (std::size_t i = 0; i < n_infra; ++i) {
    std::size_t r = pick(0, 9);
    NodeKind k = r < 6 ? NodeKind::openflow_switch : r < 8 ? NodeKind::legacy_router : NodeKind::access_point;
    std::string id = (k == NodeKind::openflow_switch ? "s" : k == NodeKind::legacy_router ? "r" : "ap") + std::to_string(i);
    t.nodes.push_back({id, k, ComponentState::up});
    infra.push_back(id);
  }
  int link_no = 0;
  auto add_link = [&](const std::string& a, const std::string& b) {
    t.links.push_back({"l" + std::to_string(link_no++), a, b, ComponentState::up, false});
  };
  for (std::size_t i = 1; i < infra.size(); ++i) add_link(infra[pick(0, i - 1)], infra[i]);  // spanning tree
  for (std::size_t e = pick(0, infra.size()); e > 0; --e) {
    std::size_t a = pick(0, infra.size() - 1), b = pick(0, infra.size() - 1);
    if (a != b) add_link(infra[a], infra[b]);
  }

  // Infrastructure pairs at most three hops apart.
  auto within = [&](const std::string& from) {
    std::map<std::string, int> dist{{from, 0}};
    std::vector<std::string> frontier{from};
    for (int d = 1; d <= 3; ++d) {
      std::vector<std::string> next;
      for (const auto& u : frontier)
        for (const auto& l : t.links)
          if (l.touches(u) && !dist.count(l.other(u)) && !net::is_host(t, l.other(u))) {
            dist[l.other(u)] = d;
            next.push_back(l.other(u));
          }
      frontier = std::move(next);
    }
    std::vector<std::string> out;
    for (const auto& [n, d] : dist)
      if (n != from && !net::is_host(t, n)) out.push_back(n);
    return out;
  };

  std::map<std::string, std::string> host_at;  // infra node -> attached host
  auto host_for = [&](const std::string& at) {
    if (auto it = host_at.find(at); it != host_at.end()) return it->second;
    std::string h = "h" + std::to_string(host_at.size());
    t.nodes.push_back({h, NodeKind::host, ComponentState::up});
    add_link(h, at);
    host_at[at] = h;
    return h;
  };

  std::size_t want = services ? services : pick(1, 6);
  for (std::size_t v = 0; v < want; ++v) {
    if (t.nodes.size() + 2 > max_nodes) break;
    std::string a = infra[pick(0, infra.size() - 1)];
    auto near = within(a);
    if (near.empty()) continue;
    std::string b = near[pick(0, near.size() - 1)];
    std::string ha = host_for(a), hb = host_for(b);
    auto path = net::find_path(t, ha, hb);
    net::Service s{"v" + std::to_string(v), v % 2 ? ServiceKind::generic : ServiceKind::streaming, *path, {ha},
                   ComponentState::up};
    t.services.push_back(std::move(s));
  }
  while (fill && t.nodes.size() < max_nodes) {
    std::string h = "h" + std::to_string(t.nodes.size()) + "x";
    t.nodes.push_back({h, NodeKind::host, ComponentState::up});
    add_link(h, infra[pick(0, infra.size() - 1)]);
  }
  return t;
}

}  // namespace sdnheal::testing
