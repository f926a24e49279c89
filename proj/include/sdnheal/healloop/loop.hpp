#pragma once

// The closed detect -> diagnose -> recover loop over a simulated network.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "sdnheal/alarmpipe/evidence.hpp"
#include "sdnheal/alarmpipe/translate.hpp"
#include "sdnheal/bndiag/builder.hpp"
#include "sdnheal/bndiag/diagnosis.hpp"
#include "sdnheal/bndiag/elimination.hpp"
#include "sdnheal/healloop/config.hpp"
#include "sdnheal/healloop/report.hpp"
#include "sdnheal/recover/execute.hpp"
#include "sdnheal/recover/strategy.hpp"
#include "sdnheal/simkernel/simulator.hpp"

namespace sdnheal::heal {
namespace detail {

/// Owns the simulator for one run and remembers what the loop has seen.
class LoopState {
 public:
  explicit LoopState(const sim::Scenario& s) : st_(sim::init_sim(s)), horizon_(s.horizon) {}

  sim::SimState& sim() { return st_; }
  bool at_horizon() const { return st_.tick >= horizon_; }

  /// One tick: step, translate, and release acknowledged keys that went quiet.
  std::vector<alarms::Alarm> tick() {
    auto r = sim::step(std::move(st_));
    st_ = std::move(r.state);
    std::vector<alarms::Alarm> now;
    now.reserve(r.alarms.size());
    for (const auto& raw : r.alarms) now.push_back(alarms::translate_alarm(raw));
    std::set<alarms::AlarmKey> present;
    for (const auto& a : now) present.insert(alarms::key_of(a));
    std::erase_if(acked_, [&](const alarms::AlarmKey& k) { return !present.count(k); });
    std::erase_if(attributed_, [&](const sim::FaultKey& k) { return !st_.active_faults.count(k); });
    history_.insert(history_.end(), now.begin(), now.end());
    return now;
  }

  bool acked(const alarms::AlarmKey& k) const { return acked_.count(k) > 0; }
  void ack(const alarms::AlarmKey& k) { acked_.insert(k); }
  const std::set<alarms::AlarmKey>& acked_keys() const { return acked_; }
  const std::vector<alarms::Alarm>& history() const { return history_; }

  /// Active faults not yet charged to an earlier incident. Report-side only.
  std::vector<InjectedFault> claim_ground_truth() {
    std::vector<InjectedFault> out;
    for (const auto& [key, since] : st_.active_faults)
      if (attributed_.insert(key).second) out.push_back({key.first, key.second, since});
    return out;
  }

 private:
  sim::SimState st_;
  int horizon_;
  std::set<alarms::AlarmKey> acked_;
  std::set<sim::FaultKey> attributed_;
  std::vector<alarms::Alarm> history_;
};

/// Lets verification poll the simulated service manager one tick at a time.
struct SimProber {
  LoopState& loop;

  bool advance() {
    if (loop.at_horizon()) return false;
    loop.tick();
    return true;
  }
  ComponentState observe(const ComponentId& v) const { return sim::observe_service(loop.sim(), v); }
};

}  // namespace detail

/// Runs the scenario to its horizon. Equal inputs give equal reports.
inline RunReport run_loop(const sim::Scenario& scenario, const bn::BnParams& params,
                          const recover::StrategyTable& table, const LoopConfig& cfg) {
  if (scenario.horizon <= 0) throw InvalidArgument("horizon must be positive");
  if (auto v = validate_loop_config(cfg); !v.empty()) throw ValidationError(std::move(v));
  if (auto v = bn::validate_bn_params(params); !v.empty()) throw ValidationError(std::move(v));
  if (auto v = recover::validate_strategy_table(table); !v.empty()) throw ValidationError(std::move(v));

  RunReport report;
  report.scenario = scenario.name;
  report.seed = scenario.seed;
  report.horizon = scenario.horizon;
  report.repair_delay = scenario.repair_delay;
  report.noise = scenario.noise;
  report.params = params;
  report.config = cfg;
  report.strategy = table;

  detail::LoopState loop(scenario);
  struct Open {
    int detected_at;
    int widenings;
  };
  std::optional<Open> open;

  while (!loop.at_horizon()) {
    auto now = loop.tick();
    const int tick = loop.sim().tick;
    // The diagnoser's view of the network follows reroutes, so rebuild each tick.
    const bn::BayesNet net = bn::build_bn(loop.sim().topology, params);
    auto usable = [&](const alarms::Alarm& a) {
      return !loop.acked(alarms::key_of(a)) && net.is_symptom(alarms::variable_for(a));
    };
    if (!open) {
      if (std::none_of(now.begin(), now.end(), usable)) continue;
      open = Open{tick, 0};
    }

    const int width = cfg.evidence_window * (1 + open->widenings);
    const alarms::TickWindow window{std::max(1, tick - width + 1), tick};
    std::vector<alarms::Alarm> candidates;
    for (const auto& a : loop.history())
      if (usable(a)) candidates.push_back(a);
    auto seen = alarms::collect_window(candidates, window);
    auto evidence = alarms::to_evidence(seen, net, cfg.policy);
    // Symptoms already explained by an earlier incident say nothing about this one.
    for (const auto& k : loop.acked_keys()) evidence.erase(bn::symptom_id(k.symptom, k.emitter));
    auto posterior = bn::posterior_marginals(net, evidence);
    auto diagnosis = bn::map_diagnosis(posterior, cfg.threshold, net.priors());

    if (!diagnosis.actionable() && open->widenings < cfg.max_widenings && !loop.at_horizon()) {
      ++open->widenings;
      continue;
    }

    IncidentRecord rec;
    rec.index = static_cast<int>(report.incidents.size()) + 1;
    rec.detected_at = open->detected_at;
    rec.diagnosed_at = tick;
    rec.widenings = open->widenings;
    rec.window = window;
    rec.injected = loop.claim_ground_truth();
    rec.alarms = seen;
    rec.evidence = std::move(evidence);
    rec.posterior = std::move(posterior);
    rec.diagnosis = std::move(diagnosis);
    for (const auto& a : seen) loop.ack(alarms::key_of(a));
    open.reset();

    if (!rec.injected.empty()) {
      int first = rec.injected.front().since;
      for (const auto& f : rec.injected) first = std::min(first, f.since);
      rec.latency.detection = rec.detected_at - first;
    }

    if (rec.diagnosis.actionable()) {
      rec.latency.diagnosis = rec.diagnosed_at - rec.detected_at;
      rec.plan = recover::select_strategy(rec.diagnosis, loop.sim().topology, table);
      auto fault = bn::parse_fault_id(rec.diagnosis.top().first);
      rec.affected = recover::affected_services(loop.sim().topology, *fault);
      if (!cfg.suggest_only && !rec.plan.empty()) {
        rec.executed = true;
        rec.outcomes = recover::execute_plan(rec.plan, [&](const RecoveryAction& a) {
          auto r = sim::apply_action(std::move(loop.sim()), a);
          loop.sim() = std::move(r.state);
          return r.outcome;
        });
        detail::SimProber prober{loop};
        rec.latency.recovery = recover::recovery_latency(rec.affected, prober, cfg.verify_timeout);
        rec.recovered = rec.latency.recovery.has_value();
      }
    }
    report.incidents.push_back(std::move(rec));
  }

  report.metrics = compute_metrics(report.incidents);
  return report;
}

}  // namespace sdnheal::heal
