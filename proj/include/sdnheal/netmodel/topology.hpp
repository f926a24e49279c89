#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnheal/vocabulary.hpp"

namespace sdnheal::net {

struct Node {
  ComponentId id;
  NodeKind kind = NodeKind::host;
  ComponentState state = ComponentState::up;

  bool operator==(const Node&) const = default;
};

/// Links are binary up/down; `management` marks out-of-band control links.
struct Link {
  ComponentId id;
  ComponentId a;
  ComponentId b;
  ComponentState state = ComponentState::up;
  bool management = false;

  bool connects(const ComponentId& x, const ComponentId& y) const {
    return (a == x && b == y) || (a == y && b == x);
  }
  bool touches(const ComponentId& n) const { return a == n || b == n; }
  const ComponentId& other(const ComponentId& n) const { return a == n ? b : a; }

  bool operator==(const Link&) const = default;
};

/// A service rides an explicit walk: host, link, node, link, ..., host.
struct Service {
  ComponentId id;
  ServiceKind kind = ServiceKind::generic;
  std::vector<ComponentId> path;
  std::set<ComponentId> clients;
  ComponentState state = ComponentState::up;

  bool operator==(const Service&) const = default;
};

enum class Category { node, link, service };

struct Topology {
  int schema_version = 1;
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<Service> services;

  const Node* find_node(const ComponentId& id) const {
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
    return it == nodes.end() ? nullptr : &*it;
  }
  const Link* find_link(const ComponentId& id) const {
    auto it = std::find_if(links.begin(), links.end(), [&](const Link& l) { return l.id == id; });
    return it == links.end() ? nullptr : &*it;
  }
  const Service* find_service(const ComponentId& id) const {
    auto it = std::find_if(services.begin(), services.end(), [&](const Service& s) { return s.id == id; });
    return it == services.end() ? nullptr : &*it;
  }
  Node* find_node(const ComponentId& id) {
    return const_cast<Node*>(std::as_const(*this).find_node(id));
  }
  Link* find_link(const ComponentId& id) {
    return const_cast<Link*>(std::as_const(*this).find_link(id));
  }
  Service* find_service(const ComponentId& id) {
    return const_cast<Service*>(std::as_const(*this).find_service(id));
  }

  std::optional<Category> category(const ComponentId& id) const {
    if (find_node(id)) return Category::node;
    if (find_link(id)) return Category::link;
    if (find_service(id)) return Category::service;
    return std::nullopt;
  }

  /// The (first) controller node, or nullptr when the topology has none.
  const Node* controller() const {
    auto it = std::find_if(nodes.begin(), nodes.end(),
                           [](const Node& n) { return n.kind == NodeKind::controller; });
    return it == nodes.end() ? nullptr : &*it;
  }

  bool operator==(const Topology&) const = default;
};

inline bool is_host(const Topology& t, const ComponentId& id) {
  const Node* n = t.find_node(id);
  return n && n->kind == NodeKind::host;
}

inline bool is_openflow_switch(const Topology& t, const ComponentId& id) {
  const Node* n = t.find_node(id);
  return n && n->kind == NodeKind::openflow_switch;
}

}  // namespace sdnheal::net
