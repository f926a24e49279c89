#pragma once

// Semantic translation of dialect-specific alarms into the three-level
// taxonomy. Each dialect maps its own event vocabulary onto symptoms; the
// level follows from the symptom.

#include <map>
#include <string>
#include <utility>

#include "sdnheal/alarmpipe/alarm.hpp"
#include "sdnheal/error.hpp"

namespace sdnheal::alarms {

/// Dialect of already-normalized alarms: the event is the symptom name.
inline constexpr const char* kNormalDialect = "normal";

class AlarmTranslator {
 public:
  using EventTable = std::map<std::string, Symptom>;

  /// The simulator's NMS and Service Manager dialects plus the normal form.
  static AlarmTranslator with_builtin_dialects() {
    AlarmTranslator t;
    t.register_dialect("sim-nms", {{"LINK_DOWN", Symptom::link_down},
                                   {"NODE_UNREACHABLE", Symptom::node_unreachable},
                                   {"OF_SESSION_LOST", Symptom::of_session_lost},
                                   {"PKT_DROP", Symptom::traffic_drop}});
    t.register_dialect("sim-sm", {{"SERVICE_DOWN", Symptom::service_down}, {"SLA_BREACH", Symptom::sla_violation}});
    EventTable normal;
    for (Symptom s : kAllSymptoms) normal[to_string(s)] = s;
    t.register_dialect(kNormalDialect, std::move(normal));
    return t;
  }

  void register_dialect(std::string dialect, EventTable events) { dialects_[std::move(dialect)] = std::move(events); }

  bool knows(const std::string& dialect) const { return dialects_.count(dialect) > 0; }

  Alarm translate(const RawAlarm& r) const {
    auto d = dialects_.find(r.dialect);
    if (d == dialects_.end()) throw ParseError("unknown alarm dialect: '" + r.dialect + "'");
    auto emitter = r.payload.find("emitter");
    auto event = r.payload.find("event");
    if (emitter == r.payload.end() || event == r.payload.end())
      throw ParseError("raw alarm without emitter/event (dialect " + r.dialect + ")");
    auto s = d->second.find(event->second);
    if (s == d->second.end())
      throw ParseError("unmappable event '" + event->second + "' in dialect " + r.dialect);
    return {classify_level(s->second), emitter->second, s->second, r.tick};
  }

 private:
  std::map<std::string, EventTable> dialects_;
};

inline Alarm translate_alarm(const RawAlarm& r) {
  static const AlarmTranslator builtin = AlarmTranslator::with_builtin_dialects();
  return builtin.translate(r);
}

/// Raw form of a normalized alarm; translating it gives the alarm back.
inline RawAlarm to_normal_form(const Alarm& a) {
  return {kNormalDialect,
          {{"emitter", a.emitter}, {"event", to_string(a.symptom)}, {"level", to_string(a.level)}},
          a.tick};
}

}  // namespace sdnheal::alarms
