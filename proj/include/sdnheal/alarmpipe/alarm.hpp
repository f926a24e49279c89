#pragma once

#include <compare>
#include <map>
#include <string>
#include <tuple>

#include "sdnheal/json_util.hpp"
#include "sdnheal/vocabulary.hpp"

namespace sdnheal::alarms {

/// Alarm as emitted by a monitoring source, before normalization.
/// The payload always carries "emitter" and "event".
struct RawAlarm {
  std::string dialect;
  std::map<std::string, std::string> payload;
  int tick = 0;

  bool operator==(const RawAlarm&) const = default;
};

struct Alarm {
  AlarmLevel level = AlarmLevel::physical;
  ComponentId emitter;
  Symptom symptom = Symptom::link_down;
  int tick = 0;

  bool operator==(const Alarm&) const = default;
  auto operator<=>(const Alarm& o) const {
    return std::tie(tick, emitter, symptom, level) <=> std::tie(o.tick, o.emitter, o.symptom, o.level);
  }
};

/// Identity of an alarm for deduplication: who reported what.
struct AlarmKey {
  ComponentId emitter;
  Symptom symptom = Symptom::link_down;

  auto operator<=>(const AlarmKey&) const = default;
};

inline AlarmKey key_of(const Alarm& a) { return {a.emitter, a.symptom}; }

/// Total over the symptom vocabulary.
constexpr AlarmLevel classify_level(Symptom s) {
  switch (s) {
    case Symptom::link_down:
    case Symptom::node_unreachable:
      return AlarmLevel::physical;
    case Symptom::of_session_lost:
    case Symptom::traffic_drop:
      return AlarmLevel::transport;
    case Symptom::service_down:
    case Symptom::sla_violation:
      return AlarmLevel::service;
  }
  return AlarmLevel::physical;
}

inline json alarm_to_json(const Alarm& a) {
  return {{"tick", a.tick}, {"emitter", a.emitter}, {"symptom", to_string(a.symptom)}, {"level", to_string(a.level)}};
}

inline Alarm alarm_from_json(const json& j) {
  Alarm a;
  a.tick = jsonio::get<int>(j, "tick", "alarm");
  a.emitter = jsonio::get<std::string>(j, "emitter", "alarm");
  a.symptom = parse_symptom(jsonio::get<std::string>(j, "symptom", "alarm"));
  a.level = parse_level(jsonio::get<std::string>(j, "level", "alarm"));
  return a;
}

}  // namespace sdnheal::alarms
