#pragma once

#include <concepts>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdnheal/actuation.hpp"
#include "sdnheal/error.hpp"
#include "sdnheal/recover/strategy.hpp"

namespace sdnheal::recover {

template <class A>
concept Actuator = std::invocable<A&, const RecoveryAction&> &&
                   std::convertible_to<std::invoke_result_t<A&, const RecoveryAction&>, ActionOutcome>;

/// Something that can let one tick pass and report a service's state.
template <class P>
concept ServiceProber = requires(P& p, const ComponentId& id) {
  { p.advance() } -> std::convertible_to<bool>;  // false once time cannot advance
  { p.observe(id) } -> std::convertible_to<ComponentState>;
};

/// Runs the plan in order. A failed primary triggers its fallback; once any
/// action on a target succeeds, later actions on that target are skipped.
/// Actuator exceptions (malformed orders) propagate.
template <Actuator A>
std::vector<ActionOutcome> execute_plan(const Plan& plan, A&& actuator) {
  if (plan.empty()) throw InvalidArgument("empty recovery plan");
  std::vector<ActionOutcome> out;
  std::set<ComponentId> settled;
  for (const auto& step : plan) {
    if (settled.count(step.action.target)) continue;
    ActionOutcome o = actuator(step.action);
    out.push_back(o);
    if (o.ok()) {
      settled.insert(step.action.target);
      continue;
    }
    if (step.fallback && !settled.count(step.fallback->target)) {
      ActionOutcome f = actuator(*step.fallback);
      out.push_back(f);
      if (f.ok()) settled.insert(step.fallback->target);
    }
  }
  return out;
}

/// Polls once per tick; returns how many ticks it took for every service to
/// read up, or nullopt if that did not happen within `timeout` ticks.
template <ServiceProber P>
std::optional<int> recovery_latency(const std::vector<ComponentId>& services, P& prober, int timeout) {
  if (timeout < 1) throw InvalidArgument("verify timeout must be at least one tick");
  if (services.empty()) return 0;
  for (const auto& s : services) (void)prober.observe(s);  // unknown ids throw before time moves
  for (int poll = 1; poll <= timeout; ++poll) {
    if (!prober.advance()) return std::nullopt;
    bool all_up = true;
    for (const auto& s : services) all_up = all_up && prober.observe(s) == ComponentState::up;
    if (all_up) return poll;
  }
  return std::nullopt;
}

template <ServiceProber P>
bool verify_recovery(const std::vector<ComponentId>& services, P& prober, int timeout) {
  return recovery_latency(services, prober, timeout).has_value();
}

}  // namespace sdnheal::recover
