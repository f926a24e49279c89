#pragma once

#include <string>
#include <string_view>

#include "sdnheal/json_util.hpp"
#include "sdnheal/netmodel/topology.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"

namespace sdnheal::net {

inline json topology_to_json(const Topology& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes)
    nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"state", to_string(n.state)}});
  json links = json::array();
  for (const auto& l : t.links)
    links.push_back({{"id", l.id},
                     {"endpoints", {l.a, l.b}},
                     {"state", to_string(l.state)},
                     {"management", l.management}});
  json services = json::array();
  for (const auto& s : t.services)
    services.push_back({{"id", s.id},
                        {"kind", to_string(s.kind)},
                        {"path", s.path},
                        {"clients", s.clients},
                        {"state", to_string(s.state)}});
  return {{"schema-version", t.schema_version}, {"nodes", nodes}, {"links", links}, {"services", services}};
}

/// Structural parse only; call validate_topology() for the model invariants.
inline Topology topology_from_json(const json& j) {
  Topology t;
  t.schema_version = jsonio::get<int>(j, "schema-version", "topology");
  for (const auto& n : jsonio::array(j, "nodes", "topology")) {
    Node node;
    node.id = jsonio::get<std::string>(n, "id", "node");
    node.kind = parse_node_kind(jsonio::get<std::string>(n, "kind", "node " + node.id));
    node.state = parse_state(jsonio::get_or<std::string>(n, "state", "up", "node " + node.id));
    t.nodes.push_back(std::move(node));
  }
  for (const auto& l : jsonio::array(j, "links", "topology")) {
    Link link;
    link.id = jsonio::get<std::string>(l, "id", "link");
    auto ends = jsonio::get<std::vector<std::string>>(l, "endpoints", "link " + link.id);
    if (ends.size() != 2) throw ParseError("link " + link.id + ": endpoints must name exactly two nodes");
    link.a = ends[0];
    link.b = ends[1];
    link.state = parse_state(jsonio::get_or<std::string>(l, "state", "up", "link " + link.id));
    link.management = jsonio::get_or<bool>(l, "management", false, "link " + link.id);
    t.links.push_back(std::move(link));
  }
  if (j.contains("services")) {
    for (const auto& s : jsonio::array(j, "services", "topology")) {
      Service svc;
      svc.id = jsonio::get<std::string>(s, "id", "service");
      const std::string ctx = "service " + svc.id;
      svc.kind = parse_service_kind(jsonio::get_or<std::string>(s, "kind", "generic", ctx));
      svc.path = jsonio::get<std::vector<std::string>>(s, "path", ctx);
      auto clients = jsonio::get_or<std::vector<std::string>>(s, "clients", {}, ctx);
      svc.clients = {clients.begin(), clients.end()};
      svc.state = parse_state(jsonio::get_or<std::string>(s, "state", "up", ctx));
      t.services.push_back(std::move(svc));
    }
  }
  return t;
}

/// Parses and validates a topology document.
inline Topology load_topology(std::string_view document) {
  Topology t = topology_from_json(parse_json(document));
  if (auto violations = validate_topology(t); !violations.empty()) throw ValidationError(std::move(violations));
  return t;
}

inline Topology load_topology(const json& document) {
  Topology t = topology_from_json(document);
  if (auto violations = validate_topology(t); !violations.empty()) throw ValidationError(std::move(violations));
  return t;
}

inline std::string serialize_topology(const Topology& t) { return topology_to_json(t).dump(2); }

}  // namespace sdnheal::net
