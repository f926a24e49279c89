#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "sdnheal/netmodel/topology_io.hpp"
#include "sdnheal/netmodel/topology_ops.hpp"
#include "support/fixtures.hpp"

using namespace sdnheal;
using sdnheal::testing::t1;

namespace {

std::vector<std::string> violations_of(const net::Topology& t) { return net::validate_topology(t); }

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(LoadTopology, T1Counts) {
  auto t = net::load_topology(std::string_view(read_file(SDNHEAL_SAMPLES_DIR "/t1.topology.json")));
  EXPECT_EQ(t.nodes.size(), 6u);
  EXPECT_EQ(t.links.size(), 5u);
  EXPECT_EQ(t.services.size(), 1u);
  EXPECT_EQ(t, t1());
}

TEST(LoadTopology, DanglingReference) {
  json j = net::topology_to_json(t1());
  j["links"].push_back({{"id", "lx"}, {"endpoints", {"s1", "sX"}}});
  try {
    net::load_topology(j);
    FAIL() << "expected a validation failure";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(contains(e.violations(), "dangling reference: sX in link lx"));
  }
}

TEST(LoadTopology, MultipleControllers) {
  json j = net::topology_to_json(t1());
  j["nodes"].push_back({{"id", "c1"}, {"kind", "controller"}});
  try {
    net::load_topology(j);
    FAIL() << "expected a validation failure";
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations().front().rfind("multiple controllers", 0), 0u);
  }
}

TEST(LoadTopology, MissingControllerAndMalformed) {
  json j = net::topology_to_json(t1());
  j["nodes"].erase(j["nodes"].begin());
  EXPECT_THROW(net::load_topology(j), ValidationError);
  EXPECT_THROW(net::load_topology(std::string_view("{ not json")), ParseError);
  EXPECT_THROW(net::load_topology(std::string_view(R"({"schema-version": 1, "nodes": 3})")), ParseError);
}

TEST(ValidateTopology, T1IsValid) { EXPECT_TRUE(violations_of(t1()).empty()); }

TEST(ValidateTopology, NonAdjacentHop) {
  auto t = t1();
  t.services[0].path = {"h1", "la", "s1", "l3", "s2", "lb", "h2"};
  EXPECT_EQ(violations_of(t), std::vector<std::string>{"path not a connected walk: v1"});
}

TEST(ValidateTopology, DuplicateId) {
  auto t = t1();
  t.nodes.push_back({"s1", NodeKind::openflow_switch, ComponentState::up});
  EXPECT_EQ(violations_of(t), std::vector<std::string>{"duplicate id: s1"});
}

TEST(ValidateTopology, OtherRules) {
  auto t = t1();
  t.links.push_back({"lz", "s3", "s3", ComponentState::up, false});
  EXPECT_FALSE(violations_of(t).empty());

  t = t1();
  t.services[0].clients = {"s1"};
  EXPECT_FALSE(violations_of(t).empty());

  t = t1();
  t.links[0].state = ComponentState::degraded;
  EXPECT_FALSE(violations_of(t).empty());

  t = t1();
  t.nodes.push_back({"s9", NodeKind::openflow_switch, ComponentState::up});  // isolated
  EXPECT_FALSE(violations_of(t).empty());

  t = t1();
  t.schema_version = 2;
  EXPECT_FALSE(violations_of(t).empty());
}

TEST(DependencySet, V1) {
  // Every node and link on the path, plus the controller for the switches.
  std::set<ComponentId> expect{"h1", "la", "s1", "l1", "s2", "lb", "h2", "c0"};
  EXPECT_EQ(net::dependency_set(t1(), "v1"), expect);
}

TEST(DependencySet, HostOnlyPathHasNoController) {
  auto t = t1();
  t.services.push_back({"v2", ServiceKind::generic, {"h1"}, {"h1"}, ComponentState::up});
  EXPECT_EQ(net::dependency_set(t, "v2"), std::set<ComponentId>{"h1"});
}

TEST(DependencySet, UnknownService) { EXPECT_THROW(net::dependency_set(t1(), "vX"), NotFoundError); }

TEST(FindPath, T1Examples) {
  using P = std::vector<ComponentId>;
  EXPECT_EQ(net::find_path(t1(), "h1", "h2"), (P{"h1", "la", "s1", "l1", "s2", "lb", "h2"}));
  EXPECT_EQ(net::find_path(t1(), "h1", "h2", {"l1"}), (P{"h1", "la", "s1", "l2", "s3", "l3", "s2", "lb", "h2"}));
  EXPECT_EQ(net::find_path(t1(), "h1", "h2", {"l1", "l2"}), std::nullopt);
  EXPECT_THROW(net::find_path(t1(), "h1", "hX"), NotFoundError);
}

TEST(FindPath, SkipsDownComponents) {
  auto t = net::set_component_state(t1(), "s3", ComponentState::down);
  EXPECT_EQ(net::find_path(t, "h1", "h2", {"l1"}), std::nullopt);
}

namespace {

// Minimum hop count by exhaustive BFS over nodes, independent of find_path.
std::optional<std::size_t> min_hops(const net::Topology& t, const ComponentId& src, const ComponentId& dst,
                                    const std::set<ComponentId>& avoid) {
  auto usable = [&](const ComponentId& id) {
    if (avoid.count(id)) return false;
    if (const auto* n = t.find_node(id)) return n->state == ComponentState::up;
    if (const auto* l = t.find_link(id)) return l->state == ComponentState::up;
    return false;
  };
  if (!usable(src) || !usable(dst)) return std::nullopt;
  std::map<ComponentId, std::size_t> dist{{src, 0}};
  std::deque<ComponentId> q{src};
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    if (u == dst) return dist[u];
    for (const auto& l : t.links)
      if (l.touches(u) && usable(l.id) && usable(l.other(u)) && !dist.count(l.other(u))) {
        dist[l.other(u)] = dist[u] + 1;
        q.push_back(l.other(u));
      }
  }
  return std::nullopt;
}

}  // namespace

TEST(FindPath, MinimalAndValidOnRandomTopologies) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto t = sdnheal::testing::random_topology(seed, 10);
    ASSERT_TRUE(violations_of(t).empty()) << "seed " << seed;
    std::mt19937_64 rng(seed);
    std::vector<ComponentId> nodes;
    for (const auto& n : t.nodes)
      if (n.kind != NodeKind::controller) nodes.push_back(n.id);
    std::set<ComponentId> avoid;
    for (const auto& l : t.links)
      if (rng() % 4 == 0) avoid.insert(l.id);
    for (const auto& a : nodes)
      for (const auto& b : nodes) {
        auto p = net::find_path(t, a, b, avoid);
        auto expect = min_hops(t, a, b, avoid);
        ASSERT_EQ(p.has_value(), expect.has_value()) << a << "->" << b << " seed " << seed;
        if (!p) continue;
        EXPECT_EQ((p->size() - 1) / 2, *expect);
        EXPECT_TRUE(net::is_connected_walk(t, *p));
        for (const auto& c : *p) EXPECT_FALSE(avoid.count(c));
      }
  }
}

TEST(SetComponentState, PointUpdate) {
  auto base = t1();
  auto t = net::set_component_state(base, "l1", ComponentState::down);
  EXPECT_EQ(t.find_link("l1")->state, ComponentState::down);
  auto back = t;
  back.find_link("l1")->state = ComponentState::up;
  EXPECT_EQ(back, base);
  EXPECT_EQ(base, t1());  // input untouched
  EXPECT_EQ(net::set_component_state(base, "l1", ComponentState::up), base);
  EXPECT_THROW(net::set_component_state(base, "zz", ComponentState::down), NotFoundError);
  EXPECT_THROW(net::set_component_state(base, "l1", ComponentState::degraded), InvalidArgument);
  EXPECT_EQ(net::set_component_state(base, "s1", ComponentState::degraded).find_node("s1")->state,
            ComponentState::degraded);
}

TEST(TopologyIo, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = sdnheal::testing::random_topology(seed);
    EXPECT_EQ(net::load_topology(std::string_view(net::serialize_topology(t))), t);
  }
  EXPECT_EQ(net::load_topology(std::string_view(net::serialize_topology(t1()))), t1());
}

TEST(DependencySet, ContainsPathAndStaysInTopology) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = sdnheal::testing::random_topology(seed);
    for (const auto& s : t.services) {
      auto d = net::dependency_set(t, s.id);
      for (const auto& c : s.path) EXPECT_TRUE(d.count(c));
      for (const auto& c : d) EXPECT_TRUE(t.category(c).has_value());
    }
  }
}
