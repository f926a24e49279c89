#pragma once

#include <compare>
#include <string>

#include "sdnheal/error.hpp"
#include "sdnheal/netmodel/topology.hpp"

namespace sdnheal::sim {

struct FaultEvent {
  ComponentId target;
  FaultClass fault_class = FaultClass::physical_failure;
  int at_tick = 0;

  bool operator==(const FaultEvent&) const = default;
};

inline bool is_compatible(const net::Topology& t, const ComponentId& target, FaultClass c) {
  const net::Node* n = t.find_node(target);
  switch (c) {
    case FaultClass::physical_failure:
      return n || t.find_link(target);
    case FaultClass::service_fault:
      return t.find_service(target) != nullptr;
    case FaultClass::openflow_agent_crash:
      return n && n->kind == NodeKind::openflow_switch;
    case FaultClass::interface_traffic_drop:
      return t.find_link(target) != nullptr;
    case FaultClass::controller_crash:
      return n && n->kind == NodeKind::controller;
  }
  return false;
}

inline void check_compatible(const net::Topology& t, const FaultEvent& f) {
  if (!t.category(f.target)) throw NotFoundError("unknown fault target: " + f.target);
  if (!is_compatible(t, f.target, f.fault_class))
    throw InvalidArgument(to_string(f.fault_class) + " cannot target " + f.target);
}

}  // namespace sdnheal::sim
