#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnheal/error.hpp"
#include "sdnheal/netmodel/topology.hpp"

namespace sdnheal::net {

/// True when `path` alternates node, link, node, ... and each link joins its neighbours.
inline bool is_connected_walk(const Topology& t, const std::vector<ComponentId>& path) {
  if (path.empty() || path.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i % 2 == 0) {
      if (!t.find_node(path[i])) return false;
    } else {
      const Link* l = t.find_link(path[i]);
      if (!l || !l->connects(path[i - 1], path[i + 1])) return false;
    }
  }
  return true;
}

/// Returns every invariant violation; empty iff the topology is valid.
///
/// Connectivity is checked over the data plane only (all non-controller nodes
/// and up links). The controller sits on the out-of-band management network
/// and is not required to have data-plane links.
inline std::vector<std::string> validate_topology(const Topology& t) {
  std::vector<std::string> out;

  if (t.schema_version != 1) out.push_back("unsupported schema-version: " + std::to_string(t.schema_version));

  std::set<ComponentId> seen;
  auto check_id = [&](const ComponentId& id) {
    if (id.empty()) {
      out.push_back("empty id");
      return;
    }
    if (!seen.insert(id).second) out.push_back("duplicate id: " + id);
  };
  for (const auto& n : t.nodes) check_id(n.id);
  for (const auto& l : t.links) check_id(l.id);
  for (const auto& s : t.services) check_id(s.id);

  std::vector<ComponentId> controllers;
  for (const auto& n : t.nodes)
    if (n.kind == NodeKind::controller) controllers.push_back(n.id);
  if (controllers.empty()) {
    out.push_back("missing controller");
  } else if (controllers.size() > 1) {
    std::string msg = "multiple controllers:";
    for (const auto& c : controllers) msg += " " + c;
    out.push_back(msg);
  }

  for (const auto& l : t.links) {
    for (const auto* end : {&l.a, &l.b})
      if (!t.find_node(*end)) out.push_back("dangling reference: " + *end + " in link " + l.id);
    if (l.a == l.b) out.push_back("self-loop link: " + l.id);
    if (l.state == ComponentState::degraded) out.push_back("invalid state for link: " + l.id);
  }

  for (const auto& s : t.services) {
    if (s.path.empty()) {
      out.push_back("empty path: " + s.id);
    } else {
      bool dangling = false;
      for (const auto& c : s.path) {
        if (!t.find_node(c) && !t.find_link(c)) {
          out.push_back("dangling reference: " + c + " in service " + s.id);
          dangling = true;
        }
      }
      if (!dangling) {
        if (!is_connected_walk(t, s.path)) {
          out.push_back("path not a connected walk: " + s.id);
        } else if (!is_host(t, s.path.front()) || !is_host(t, s.path.back())) {
          out.push_back("path endpoints not hosts: " + s.id);
        }
      }
    }
    for (const auto& c : s.clients)
      if (!is_host(t, c)) out.push_back("client not a host: " + c + " in service " + s.id);
  }

  // Data-plane connectivity over up components.
  std::map<ComponentId, std::vector<ComponentId>> adj;
  for (const auto& n : t.nodes)
    if (n.kind != NodeKind::controller && n.state != ComponentState::down) adj[n.id];
  for (const auto& l : t.links) {
    if (l.state != ComponentState::up || !adj.count(l.a) || !adj.count(l.b)) continue;
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }
  if (!adj.empty()) {
    std::set<ComponentId> reached{adj.begin()->first};
    std::deque<ComponentId> queue{adj.begin()->first};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (const auto& v : adj[u])
        if (reached.insert(v).second) queue.push_back(v);
    }
    if (reached.size() != adj.size()) {
      std::string msg = "topology not connected: unreachable";
      for (const auto& [id, _] : adj)
        if (!reached.count(id)) msg += " " + id;
      out.push_back(msg);
    }
  }
  return out;
}

/// Components a service relies on: its whole path, plus the controller when an
/// OpenFlow switch on the path takes its flows from it.
inline std::set<ComponentId> dependency_set(const Topology& t, const ComponentId& service) {
  const Service* s = t.find_service(service);
  if (!s) throw NotFoundError("unknown service: " + service);
  std::set<ComponentId> deps(s->path.begin(), s->path.end());
  bool has_switch = std::any_of(s->path.begin(), s->path.end(),
                                [&](const ComponentId& c) { return is_openflow_switch(t, c); });
  if (has_switch) {
    if (const Node* c = t.controller()) deps.insert(c->id);
  }
  return deps;
}

/// Minimum-hop walk from `src` to `dst` over up components outside `avoid`.
/// Breadth-first with neighbours visited in (node id, link id) order, so the
/// result is deterministic.
inline std::optional<std::vector<ComponentId>> find_path(const Topology& t, const ComponentId& src,
                                                         const ComponentId& dst,
                                                         const std::set<ComponentId>& avoid = {}) {
  if (!t.find_node(src)) throw NotFoundError("unknown node: " + src);
  if (!t.find_node(dst)) throw NotFoundError("unknown node: " + dst);

  auto usable_node = [&](const ComponentId& id) {
    const Node* n = t.find_node(id);
    return n && n->state == ComponentState::up && !avoid.count(id);
  };
  if (!usable_node(src) || !usable_node(dst)) return std::nullopt;
  if (src == dst) return std::vector<ComponentId>{src};

  std::map<ComponentId, std::vector<std::pair<ComponentId, ComponentId>>> adj;
  for (const auto& l : t.links) {
    if (l.state != ComponentState::up || avoid.count(l.id)) continue;
    if (!usable_node(l.a) || !usable_node(l.b)) continue;
    adj[l.a].emplace_back(l.b, l.id);
    adj[l.b].emplace_back(l.a, l.id);
  }
  for (auto& [_, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

  // parent[node] = (previous node, link used)
  std::map<ComponentId, std::pair<ComponentId, ComponentId>> parent;
  std::set<ComponentId> visited{src};
  std::deque<ComponentId> queue{src};
  while (!queue.empty() && !visited.count(dst)) {
    auto u = queue.front();
    queue.pop_front();
    for (const auto& [v, link] : adj[u]) {
      if (!visited.insert(v).second) continue;
      parent[v] = {u, link};
      queue.push_back(v);
    }
  }
  if (!visited.count(dst)) return std::nullopt;

  std::vector<ComponentId> rev{dst};
  for (ComponentId cur = dst; cur != src;) {
    const auto& [prev, link] = parent.at(cur);
    rev.push_back(link);
    rev.push_back(prev);
    cur = prev;
  }
  return std::vector<ComponentId>(rev.rbegin(), rev.rend());
}

/// Copy of `t` with a single component's state replaced.
inline Topology set_component_state(const Topology& t, const ComponentId& c, ComponentState s) {
  Topology out = t;
  if (Node* n = out.find_node(c)) {
    n->state = s;
  } else if (Link* l = out.find_link(c)) {
    if (s == ComponentState::degraded) throw InvalidArgument("links are up or down only: " + c);
    l->state = s;
  } else if (Service* v = out.find_service(c)) {
    v->state = s;
  } else {
    throw NotFoundError("unknown component: " + c);
  }
  return out;
}

}  // namespace sdnheal::net
