#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdnheal/alarmpipe/alarm.hpp"
#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/bndiag/builder.hpp"
#include "sdnheal/error.hpp"

namespace sdnheal::alarms {

/// Inclusive tick span [first, last].
struct TickWindow {
  int first = 0;
  int last = 0;
};

/// Alarms inside the window, one per (emitter, symptom), keeping the earliest.
/// Ordered by (emitter, symptom).
inline std::vector<Alarm> collect_window(const std::vector<Alarm>& alarms, TickWindow window) {
  if (window.last < window.first) throw InvalidArgument("window must span at least one tick");
  std::map<AlarmKey, Alarm> kept;
  for (const auto& a : alarms) {
    if (a.tick < window.first || a.tick > window.last) continue;
    auto [it, inserted] = kept.try_emplace(key_of(a), a);
    if (!inserted && a.tick < it->second.tick) it->second = a;
  }
  std::vector<Alarm> out;
  out.reserve(kept.size());
  for (auto& [_, a] : kept) out.push_back(std::move(a));
  return out;
}

enum class EvidencePolicy { closed_world, open_world };

inline std::string to_string(EvidencePolicy p) {
  return p == EvidencePolicy::closed_world ? "closed-world" : "open-world";
}

inline EvidencePolicy parse_evidence_policy(const std::string& s) {
  if (s == "closed-world") return EvidencePolicy::closed_world;
  if (s == "open-world") return EvidencePolicy::open_world;
  throw ParseError("unknown evidence policy '" + s + "'");
}

inline std::string variable_for(const Alarm& a) { return bn::symptom_id(a.symptom, a.emitter); }

/// Reported symptoms become true. Closed-world also asserts every other
/// symptom variable false; open-world leaves them unobserved.
inline bn::EvidenceMap to_evidence(const std::vector<Alarm>& window, const bn::BayesNet& net, EvidencePolicy policy) {
  bn::EvidenceMap ev;
  if (policy == EvidencePolicy::closed_world)
    for (const auto& y : net.symptoms()) ev[y] = false;
  for (const auto& a : window) {
    auto id = variable_for(a);
    if (!net.is_symptom(id)) throw NotFoundError("alarm has no symptom variable (topology/network mismatch): " + id);
    ev[id] = true;
  }
  return ev;
}

}  // namespace sdnheal::alarms
