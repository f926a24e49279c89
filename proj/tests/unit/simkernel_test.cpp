#include <set>

#include <gtest/gtest.h>

#include "sdnheal/alarmpipe/translate.hpp"
#include "sdnheal/simkernel/scenario.hpp"
#include "sdnheal/simkernel/simulator.hpp"
#include "support/fixtures.hpp"

using namespace sdnheal;
using sdnheal::testing::t1;
using sdnheal::testing::t1_scenario;

namespace {

using KeySet = std::set<alarms::AlarmKey>;

KeySet keys_of(const std::vector<alarms::RawAlarm>& raw) {
  KeySet out;
  for (const auto& r : raw) out.insert(alarms::key_of(alarms::translate_alarm(r)));
  return out;
}

sim::SimState started(std::vector<sim::FaultEvent> faults = {}) { return sim::init_sim(t1_scenario(std::move(faults))); }

}  // namespace

TEST(InitSim, EmptyScenario) {
  auto st = started();
  EXPECT_EQ(st.tick, 0);
  EXPECT_TRUE(st.active_faults.empty());
  for (const auto& n : st.topology.nodes) EXPECT_EQ(n.state, ComponentState::up);
}

TEST(InitSim, SeedOnlyChangesRng) {
  auto a = sim::init_sim(t1_scenario({}, 7));
  auto b = sim::init_sim(t1_scenario({}, 8));
  EXPECT_NE(a.rng, b.rng);
  b.rng = a.rng;
  b.seed = a.seed;
  EXPECT_EQ(a, b);
}

TEST(InitSim, FaultBeyondHorizon) {
  EXPECT_THROW(sim::init_sim(t1_scenario({{"l1", FaultClass::physical_failure, 10}})), ValidationError);
  EXPECT_THROW(sim::init_sim(t1_scenario({{"h1", FaultClass::openflow_agent_crash, 1}})), ValidationError);
  auto s = t1_scenario({});
  s.noise.alarm_loss_probability = 0.1;  // deterministic mode must be noiseless
  EXPECT_THROW(sim::init_sim(s), ValidationError);
}

TEST(InjectFault, Physical) {
  auto st = sim::inject_fault(started(), {"l1", FaultClass::physical_failure, 0});
  EXPECT_EQ(st.topology.find_link("l1")->state, ComponentState::down);
  ASSERT_EQ(st.active_faults.size(), 1u);
  EXPECT_TRUE(st.has_fault("l1", FaultClass::physical_failure));
  EXPECT_EQ(sim::inject_fault(st, {"l1", FaultClass::physical_failure, 0}), st);
}

TEST(InjectFault, AgentCrashKeepsSwitchUp) {
  auto st = sim::inject_fault(started(), {"s1", FaultClass::openflow_agent_crash, 0});
  EXPECT_EQ(st.topology.find_node("s1")->state, ComponentState::up);
  EXPECT_TRUE(st.has_fault("s1", FaultClass::openflow_agent_crash));
}

TEST(InjectFault, Incompatible) {
  EXPECT_THROW(sim::inject_fault(started(), {"h1", FaultClass::openflow_agent_crash, 0}), InvalidArgument);
  EXPECT_THROW(sim::inject_fault(started(), {"s1", FaultClass::interface_traffic_drop, 0}), InvalidArgument);
  EXPECT_THROW(sim::inject_fault(started(), {"zz", FaultClass::physical_failure, 0}), NotFoundError);
}

TEST(Step, LinkFailureAlarms) {
  auto st = sim::inject_fault(started(), {"l1", FaultClass::physical_failure, 0});
  auto r = sim::step(st);
  EXPECT_EQ(r.state.tick, 1);
  KeySet expect{{"l1", Symptom::link_down}, {"l1", Symptom::traffic_drop}, {"v1", Symptom::service_down}};
  EXPECT_EQ(keys_of(r.alarms), expect);
  for (const auto& a : r.alarms) EXPECT_EQ(a.tick, 1);
}

TEST(Step, Quiescent) { EXPECT_TRUE(sim::step(started()).alarms.empty()); }

TEST(Step, AgentCrashAlarms) {
  auto st = sim::inject_fault(started(), {"s1", FaultClass::openflow_agent_crash, 0});
  EXPECT_EQ(keys_of(sim::step(st).alarms), (KeySet{{"s1", Symptom::of_session_lost}}));
}

TEST(Step, GenerativeTableOnT1) {
  using S = Symptom;
  struct Case {
    sim::FaultEvent f;
    KeySet expect;
  };
  std::vector<Case> cases{
      {{"s1", FaultClass::physical_failure, 0},
       {{"s1", S::node_unreachable}, {"la", S::link_down}, {"l1", S::link_down}, {"l2", S::link_down}, {"v1", S::service_down}}},
      {{"s3", FaultClass::physical_failure, 0}, {{"s3", S::node_unreachable}, {"l2", S::link_down}, {"l3", S::link_down}}},
      {{"l2", FaultClass::interface_traffic_drop, 0}, {{"l2", S::traffic_drop}}},
      {{"l1", FaultClass::interface_traffic_drop, 0}, {{"l1", S::traffic_drop}, {"v1", S::sla_violation}}},
      {{"v1", FaultClass::service_fault, 0}, {{"v1", S::service_down}}},
      {{"c0", FaultClass::controller_crash, 0},
       {{"s1", S::of_session_lost}, {"s2", S::of_session_lost}, {"s3", S::of_session_lost}}},
  };
  for (const auto& c : cases) {
    auto st = sim::inject_fault(started(), c.f);
    EXPECT_EQ(keys_of(sim::step(st).alarms), c.expect) << c.f.target;
    EXPECT_EQ(sim::generative_symptoms(st), c.expect);
  }
}

TEST(Step, ScheduledFaultArrivesOnItsTick) {
  auto st = started({{"l1", FaultClass::physical_failure, 2}});
  auto r1 = sim::step(st);
  EXPECT_TRUE(r1.alarms.empty());
  auto r2 = sim::step(r1.state);
  EXPECT_EQ(r2.alarms.size(), 3u);
  EXPECT_TRUE(r2.state.has_fault("l1", FaultClass::physical_failure));
}

TEST(Step, HorizonExceeded) {
  auto st = started();
  for (int i = 0; i < 10; ++i) st = sim::step(st).state;
  EXPECT_THROW(sim::step(st), InvalidArgument);
}

TEST(Step, StochasticIsReproducible) {
  auto s = t1_scenario({{"l1", FaultClass::physical_failure, 1}}, 42, 50);
  s.noise = sim::stochastic_noise(0.3, 0.5);
  auto a = sim::init_sim(s), b = sim::init_sim(s);
  bool saw_noise = false;
  for (int i = 0; i < 50; ++i) {
    auto ra = sim::step(a), rb = sim::step(b);
    EXPECT_EQ(ra.alarms, rb.alarms);
    EXPECT_EQ(ra.state, rb.state);
    if (keys_of(ra.alarms) != sim::generative_symptoms(ra.state)) saw_noise = true;
    a = ra.state;
    b = rb.state;
  }
  EXPECT_TRUE(saw_noise);
}

TEST(ObserveService, Readings) {
  EXPECT_EQ(sim::observe_service(started(), "v1"), ComponentState::up);
  auto down = sim::inject_fault(started(), {"l1", FaultClass::physical_failure, 0});
  EXPECT_EQ(sim::observe_service(down, "v1"), ComponentState::down);
  auto slow = sim::inject_fault(started(), {"l1", FaultClass::interface_traffic_drop, 0});
  EXPECT_EQ(sim::observe_service(slow, "v1"), ComponentState::degraded);
  EXPECT_THROW(sim::observe_service(started(), "vX"), NotFoundError);
}

TEST(ObserveService, ConsistentWithGenerativeTable) {
  // Deterministic mode: down iff a service fault or a dead path component.
  std::vector<sim::FaultEvent> all;
  for (const auto& n : t1().nodes) {
    all.push_back({n.id, FaultClass::physical_failure, 0});
    if (n.kind == NodeKind::openflow_switch) all.push_back({n.id, FaultClass::openflow_agent_crash, 0});
    if (n.kind == NodeKind::controller) all.push_back({n.id, FaultClass::controller_crash, 0});
  }
  for (const auto& l : t1().links) {
    all.push_back({l.id, FaultClass::physical_failure, 0});
    all.push_back({l.id, FaultClass::interface_traffic_drop, 0});
  }
  all.push_back({"v1", FaultClass::service_fault, 0});
  const auto path = t1().services[0].path;
  for (const auto& f : all) {
    auto st = sim::inject_fault(started(), f);
    bool on_path = std::find(path.begin(), path.end(), f.target) != path.end();
    bool down = f.fault_class == FaultClass::service_fault || (f.fault_class == FaultClass::physical_failure && on_path);
    EXPECT_EQ(sim::observe_service(st, "v1") == ComponentState::down, down) << f.target;
  }
}

TEST(ApplyAction, Reroute) {
  auto st = sim::inject_fault(started(), {"l1", FaultClass::physical_failure, 0});
  auto r = sim::apply_action(st, {ActionKind::reroute, "v1", {{"avoid", {"l1"}}}});
  EXPECT_TRUE(r.outcome.ok());
  EXPECT_EQ(r.state.topology.find_service("v1")->path,
            (std::vector<ComponentId>{"h1", "la", "s1", "l2", "s3", "l3", "s2", "lb", "h2"}));
  EXPECT_EQ(sim::observe_service(r.state, "v1"), ComponentState::up);
}

TEST(ApplyAction, RerouteWithoutAlternative) {
  auto r = sim::apply_action(started(), {ActionKind::reroute, "v1", {{"avoid", {"l1", "l2"}}}});
  EXPECT_FALSE(r.outcome.ok());
  EXPECT_EQ(r.outcome.detail, "no alternative path");
}

TEST(ApplyAction, RestartServiceClearsNextTick) {
  auto st = sim::inject_fault(started(), {"v1", FaultClass::service_fault, 0});
  auto r = sim::apply_action(st, {ActionKind::restart_service, "v1", {}});
  EXPECT_TRUE(r.outcome.ok());
  EXPECT_TRUE(r.state.has_fault("v1", FaultClass::service_fault));
  auto next = sim::step(r.state);
  EXPECT_FALSE(next.state.has_fault("v1", FaultClass::service_fault));
  EXPECT_TRUE(next.alarms.empty());
}

TEST(ApplyAction, AgentRestartAndFailover) {
  auto st = sim::inject_fault(started(), {"s2", FaultClass::openflow_agent_crash, 0});
  st = sim::apply_action(st, {ActionKind::restart_openflow_agent, "s2", {}}).state;
  EXPECT_TRUE(sim::step(st).state.active_faults.empty());

  st = sim::inject_fault(started(), {"c0", FaultClass::controller_crash, 0});
  st = sim::apply_action(st, {ActionKind::controller_failover, "c0", {}}).state;
  EXPECT_TRUE(sim::step(st).state.active_faults.empty());
}

TEST(ApplyAction, RepairTicket) {
  auto st = sim::inject_fault(started(), {"l1", FaultClass::physical_failure, 0});
  auto r = sim::apply_action(st, {ActionKind::open_repair_ticket, "l1", {}});
  EXPECT_EQ(r.outcome.detail, "repair scheduled at tick 5");
  st = r.state;
  for (int i = 0; i < 4; ++i) {
    st = sim::step(st).state;
    EXPECT_TRUE(st.has_fault("l1", FaultClass::physical_failure)) << st.tick;
  }
  st = sim::step(st).state;
  EXPECT_EQ(st.tick, 5);
  EXPECT_FALSE(st.has_fault("l1", FaultClass::physical_failure));
  EXPECT_EQ(st.topology.find_link("l1")->state, ComponentState::up);
}

TEST(ApplyAction, LoadBalanceAccessPoint) {
  auto t = t1();
  t.nodes.push_back({"ap1", NodeKind::access_point, ComponentState::up});
  t.nodes.push_back({"ap2", NodeKind::access_point, ComponentState::up});
  t.nodes.push_back({"h3", NodeKind::host, ComponentState::up});
  t.links.push_back({"lc", "ap1", "s1", ComponentState::up, false});
  t.links.push_back({"ld", "ap2", "s3", ComponentState::up, false});
  t.links.push_back({"le", "h3", "ap1", ComponentState::up, false});
  t.services.push_back({"v2", ServiceKind::streaming, {"h3", "le", "ap1", "lc", "s1", "l1", "s2", "lb", "h2"}, {"h3"},
                        ComponentState::up});
  sim::Scenario s;
  s.topology = t;
  s.horizon = 10;
  auto st = sim::inject_fault(sim::init_sim(s), {"ap1", FaultClass::physical_failure, 0});
  EXPECT_EQ(sim::observe_service(st, "v2"), ComponentState::down);
  auto r = sim::apply_action(st, {ActionKind::load_balance_ap, "ap1", {{"destination", {"ap2"}}, {"clients", {"h3"}}}});
  ASSERT_TRUE(r.outcome.ok()) << r.outcome.detail;
  EXPECT_EQ(sim::observe_service(r.state, "v2"), ComponentState::up);
  const auto& p = r.state.topology.find_service("v2")->path;
  EXPECT_EQ(std::find(p.begin(), p.end(), "ap1"), p.end());

  auto bad = sim::apply_action(st, {ActionKind::load_balance_ap, "ap1", {{"destination", {"s1"}}}});
  EXPECT_FALSE(bad.outcome.ok());
}

TEST(ApplyAction, MalformedThrows) {
  EXPECT_THROW(sim::apply_action(started(), {ActionKind::reroute, "zz", {}}), NotFoundError);
  EXPECT_THROW(sim::apply_action(started(), {ActionKind::restart_openflow_agent, "h1", {}}), InvalidArgument);
  EXPECT_THROW(sim::apply_action(started(), {ActionKind::controller_failover, "s1", {}}), InvalidArgument);
}

TEST(Scenario, JsonRoundTripAndFileReference) {
  auto s = sim::load_scenario(SDNHEAL_SAMPLES_DIR "/t1-linkfail.scenario.json");
  EXPECT_EQ(s.topology, t1());
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.horizon, 10);
  ASSERT_EQ(s.faults.size(), 1u);
  EXPECT_EQ(s.faults[0].target, "l1");
  auto again = sim::scenario_from_json(sim::scenario_to_json(s));
  EXPECT_EQ(sim::scenario_to_json(again), sim::scenario_to_json(s));
  EXPECT_THROW(sim::load_scenario("/nonexistent/x.scenario.json"), IoError);
}
