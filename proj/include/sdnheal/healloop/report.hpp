#pragma once

// Incident records, run reports and the metrics derived from them.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdnheal/actuation.hpp"
#include "sdnheal/alarmpipe/alarm.hpp"
#include "sdnheal/alarmpipe/evidence.hpp"
#include "sdnheal/bndiag/builder.hpp"
#include "sdnheal/bndiag/diagnosis.hpp"
#include "sdnheal/bndiag/posterior.hpp"
#include "sdnheal/healloop/config.hpp"
#include "sdnheal/recover/strategy.hpp"
#include "sdnheal/simkernel/scenario.hpp"

namespace sdnheal::heal {

inline constexpr int kReportSchemaVersion = 1;

/// A fault that was really active when an incident was detected.
struct InjectedFault {
  ComponentId target;
  FaultClass fault_class = FaultClass::physical_failure;
  int since = 0;  // tick it became active

  std::string id() const { return bn::fault_id(fault_class, target); }
  bool operator==(const InjectedFault&) const = default;
};

struct Latencies {
  std::optional<int> detection;  // first alarm tick - fault activation tick
  std::optional<int> diagnosis;  // actionable diagnosis tick - first alarm tick
  std::optional<int> recovery;   // polls until every affected service read up

  bool operator==(const Latencies&) const = default;
};

/// One pass through detect, diagnose, recover.
struct IncidentRecord {
  int index = 0;
  int detected_at = 0;
  int diagnosed_at = 0;
  int widenings = 0;
  alarms::TickWindow window;
  std::vector<InjectedFault> injected;
  std::vector<alarms::Alarm> alarms;
  bn::EvidenceMap evidence;
  bn::Posterior posterior;
  bn::Diagnosis diagnosis;
  recover::Plan plan;
  bool executed = false;
  std::vector<ActionOutcome> outcomes;
  std::vector<ComponentId> affected;
  bool recovered = false;
  Latencies latency;

  /// Most probable fault, whatever the verdict.
  std::optional<std::string> map_fault() const {
    auto r = posterior.ranking();
    if (r.empty()) return std::nullopt;
    return r.front().first;
  }

  bool has_ground_truth() const { return !injected.empty(); }

  bool in_top(std::size_t k) const {
    auto r = posterior.ranking();
    for (std::size_t i = 0; i < std::min(k, r.size()); ++i)
      for (const auto& f : injected)
        if (f.id() == r[i].first) return true;
    return false;
  }

  bool map_correct() const { return in_top(1); }
};

struct Metrics {
  int incidents = 0;
  int with_ground_truth = 0;
  int resolved = 0;  // actionable verdict
  int recovered = 0;
  std::optional<double> accuracy;  // MAP among injected, over incidents with ground truth
  std::optional<double> top3_accuracy;
  std::optional<double> mean_detection_latency;
  std::optional<double> mean_diagnosis_latency;
  std::optional<double> mean_recovery_latency;
  std::map<std::string, int> alarm_counts;  // by level, over incident windows

  bool operator==(const Metrics&) const = default;
};

namespace detail {

inline std::optional<double> mean_of(const std::vector<int>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (int x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

inline Metrics compute_metrics(const std::vector<const IncidentRecord*>& records) {
  Metrics m;
  for (AlarmLevel l : {AlarmLevel::physical, AlarmLevel::transport, AlarmLevel::service}) m.alarm_counts[to_string(l)] = 0;
  int correct = 0, top3 = 0;
  std::vector<int> det, diag, rec;
  for (const auto* r : records) {
    ++m.incidents;
    if (r->diagnosis.actionable()) ++m.resolved;
    if (r->recovered) ++m.recovered;
    if (r->has_ground_truth()) {
      ++m.with_ground_truth;
      correct += r->map_correct() ? 1 : 0;
      top3 += r->in_top(3) ? 1 : 0;
    }
    if (r->latency.detection) det.push_back(*r->latency.detection);
    if (r->latency.diagnosis) diag.push_back(*r->latency.diagnosis);
    if (r->latency.recovery) rec.push_back(*r->latency.recovery);
    for (const auto& a : r->alarms) ++m.alarm_counts[to_string(a.level)];
  }
  if (m.with_ground_truth > 0) {
    m.accuracy = static_cast<double>(correct) / m.with_ground_truth;
    m.top3_accuracy = static_cast<double>(top3) / m.with_ground_truth;
  }
  m.mean_detection_latency = detail::mean_of(det);
  m.mean_diagnosis_latency = detail::mean_of(diag);
  m.mean_recovery_latency = detail::mean_of(rec);
  return m;
}

inline Metrics compute_metrics(const std::vector<IncidentRecord>& records) {
  std::vector<const IncidentRecord*> ptrs;
  for (const auto& r : records) ptrs.push_back(&r);
  return compute_metrics(ptrs);
}

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  int horizon = 0;
  int repair_delay = 5;
  sim::NoiseConfig noise;
  bn::BnParams params;
  LoopConfig config;
  recover::StrategyTable strategy;
  std::vector<IncidentRecord> incidents;
  Metrics metrics;
};

// ---- json ----------------------------------------------------------------

namespace detail {

inline json opt_to_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
inline json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
std::optional<T> opt_from_json(const json& j, const char* key, const char* context) {
  const json& v = jsonio::field(j, key, context);
  if (v.is_null()) return std::nullopt;
  return jsonio::get<T>(j, key, context);
}

/// Parameter keys whose value is the built-in default.
inline json defaulted_keys(const RunReport& r) {
  json out = json::array();
  auto compare = [&](const json& actual, const json& dflt, const std::string& prefix) {
    for (const auto& [k, v] : dflt.items())
      if (actual.contains(k) && actual.at(k) == v) out.push_back(prefix + k);
  };
  compare(bn::bn_params_to_json(r.params), bn::bn_params_to_json({}), "bn.");
  compare(loop_config_to_json(r.config), loop_config_to_json({}), "loop.");
  if (r.strategy == recover::default_strategy_table()) out.push_back("strategy");
  if (r.repair_delay == sim::Scenario{}.repair_delay) out.push_back("scenario.repair-delay");
  return out;
}

}  // namespace detail

inline json metrics_to_json(const Metrics& m) {
  return {{"incidents", m.incidents},
          {"with-ground-truth", m.with_ground_truth},
          {"resolved", m.resolved},
          {"recovered", m.recovered},
          {"accuracy", detail::opt_to_json(m.accuracy)},
          {"top3-accuracy", detail::opt_to_json(m.top3_accuracy)},
          {"mean-detection-latency", detail::opt_to_json(m.mean_detection_latency)},
          {"mean-diagnosis-latency", detail::opt_to_json(m.mean_diagnosis_latency)},
          {"mean-recovery-latency", detail::opt_to_json(m.mean_recovery_latency)},
          {"alarm-counts", m.alarm_counts}};
}

inline Metrics metrics_from_json(const json& j) {
  const char* ctx = "metrics";
  Metrics m;
  m.incidents = jsonio::get<int>(j, "incidents", ctx);
  m.with_ground_truth = jsonio::get<int>(j, "with-ground-truth", ctx);
  m.resolved = jsonio::get<int>(j, "resolved", ctx);
  m.recovered = jsonio::get<int>(j, "recovered", ctx);
  m.accuracy = detail::opt_from_json<double>(j, "accuracy", ctx);
  m.top3_accuracy = detail::opt_from_json<double>(j, "top3-accuracy", ctx);
  m.mean_detection_latency = detail::opt_from_json<double>(j, "mean-detection-latency", ctx);
  m.mean_diagnosis_latency = detail::opt_from_json<double>(j, "mean-diagnosis-latency", ctx);
  m.mean_recovery_latency = detail::opt_from_json<double>(j, "mean-recovery-latency", ctx);
  m.alarm_counts = jsonio::get<std::map<std::string, int>>(j, "alarm-counts", ctx);
  return m;
}

inline json incident_to_json(const IncidentRecord& r) {
  json injected = json::array();
  for (const auto& f : r.injected)
    injected.push_back({{"fault", f.id()}, {"target", f.target}, {"class", to_string(f.fault_class)}, {"since", f.since}});
  json alarms = json::array();
  for (const auto& a : r.alarms) alarms.push_back(alarms::alarm_to_json(a));
  json outcomes = json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(outcome_to_json(o));
  return {{"index", r.index},
          {"detected-at", r.detected_at},
          {"diagnosed-at", r.diagnosed_at},
          {"widenings", r.widenings},
          {"window", {{"first", r.window.first}, {"last", r.window.last}}},
          {"injected", injected},
          {"alarms", alarms},
          {"evidence", r.evidence},
          {"posterior", bn::posterior_to_json(r.posterior)},
          {"diagnosis", bn::diagnosis_to_json(r.diagnosis)},
          {"suspect", r.diagnosis.verdict == bn::Verdict::suspect},
          {"plan", recover::plan_to_json(r.plan)},
          {"executed", r.executed},
          {"outcomes", outcomes},
          {"affected-services", r.affected},
          {"recovered", r.recovered},
          {"latency",
           {{"detection", detail::opt_to_json(r.latency.detection)},
            {"diagnosis", detail::opt_to_json(r.latency.diagnosis)},
            {"recovery", detail::opt_to_json(r.latency.recovery)}}}};
}

inline IncidentRecord incident_from_json(const json& j) {
  const char* ctx = "incident";
  IncidentRecord r;
  r.index = jsonio::get<int>(j, "index", ctx);
  r.detected_at = jsonio::get<int>(j, "detected-at", ctx);
  r.diagnosed_at = jsonio::get<int>(j, "diagnosed-at", ctx);
  r.widenings = jsonio::get<int>(j, "widenings", ctx);
  const json& w = jsonio::field(j, "window", ctx);
  r.window = {jsonio::get<int>(w, "first", "window"), jsonio::get<int>(w, "last", "window")};
  for (const auto& f : jsonio::array(j, "injected", ctx))
    r.injected.push_back({jsonio::get<std::string>(f, "target", "injected"),
                          parse_fault_class(jsonio::get<std::string>(f, "class", "injected")),
                          jsonio::get<int>(f, "since", "injected")});
  for (const auto& a : jsonio::array(j, "alarms", ctx)) r.alarms.push_back(alarms::alarm_from_json(a));
  r.evidence = jsonio::get<bn::EvidenceMap>(j, "evidence", ctx);
  r.posterior = bn::posterior_from_json(jsonio::field(j, "posterior", ctx));
  r.diagnosis = bn::diagnosis_from_json(jsonio::field(j, "diagnosis", ctx));
  r.plan = recover::plan_from_json(jsonio::field(j, "plan", ctx));
  r.executed = jsonio::get<bool>(j, "executed", ctx);
  for (const auto& o : jsonio::array(j, "outcomes", ctx)) r.outcomes.push_back(outcome_from_json(o));
  r.affected = jsonio::get<std::vector<ComponentId>>(j, "affected-services", ctx);
  r.recovered = jsonio::get<bool>(j, "recovered", ctx);
  const json& l = jsonio::field(j, "latency", ctx);
  r.latency.detection = detail::opt_from_json<int>(l, "detection", "latency");
  r.latency.diagnosis = detail::opt_from_json<int>(l, "diagnosis", "latency");
  r.latency.recovery = detail::opt_from_json<int>(l, "recovery", "latency");
  return r;
}

inline json report_to_json(const RunReport& r) {
  json incidents = json::array();
  for (const auto& i : r.incidents) incidents.push_back(incident_to_json(i));
  return {{"schema-version", kReportSchemaVersion},
          {"scenario", r.scenario},
          {"seed", r.seed},
          {"horizon", r.horizon},
          {"repair-delay", r.repair_delay},
          {"noise", sim::noise_to_json(r.noise)},
          {"parameters",
           {{"bn", bn::bn_params_to_json(r.params)},
            {"loop", loop_config_to_json(r.config)},
            {"strategy", recover::strategy_table_to_json(r.strategy)},
            {"defaulted", detail::defaulted_keys(r)}}},
          {"incidents", incidents},
          {"metrics", metrics_to_json(r.metrics)}};
}

inline RunReport report_from_json(const json& j) {
  const char* ctx = "report";
  if (jsonio::get<int>(j, "schema-version", ctx) != kReportSchemaVersion)
    throw ParseError("report: unsupported schema-version");
  RunReport r;
  r.scenario = jsonio::get<std::string>(j, "scenario", ctx);
  r.seed = jsonio::get<std::uint64_t>(j, "seed", ctx);
  r.horizon = jsonio::get<int>(j, "horizon", ctx);
  r.repair_delay = jsonio::get<int>(j, "repair-delay", ctx);
  r.noise = sim::noise_from_json(jsonio::field(j, "noise", ctx));
  const json& p = jsonio::field(j, "parameters", ctx);
  r.params = bn::bn_params_from_json(jsonio::field(p, "bn", "parameters"));
  r.config = loop_config_from_json(jsonio::field(p, "loop", "parameters"));
  r.strategy = recover::strategy_table_from_json(jsonio::field(p, "strategy", "parameters"));
  for (const auto& i : jsonio::array(j, "incidents", ctx)) r.incidents.push_back(incident_from_json(i));
  r.metrics = metrics_from_json(jsonio::field(j, "metrics", ctx));
  return r;
}

// ---- rendering -------------------------------------------------------------

enum class ReportFormat { json, table };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "table") return ReportFormat::table;
  throw ParseError("unknown report format '" + s + "'");
}

namespace detail {

inline std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out.empty() ? "-" : out;
}

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << v;
  return ss.str();
}

inline std::string render_table(const RunReport& r) {
  std::vector<std::vector<std::string>> rows{{"incident", "injected", "diagnosed", "verdict", "recovered", "latency"}};
  for (const auto& i : r.incidents) {
    std::vector<std::string> inj;
    for (const auto& f : i.injected) inj.push_back(f.id());
    auto map = i.map_fault();
    rows.push_back({std::to_string(i.index), join_ids(inj), map ? *map : "-", to_string(i.diagnosis.verdict),
                    i.recovered ? "yes" : "no",
                    i.latency.recovery ? std::to_string(*i.latency.recovery) : "-"});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  if (!r.incidents.empty()) {
    const Metrics& m = r.metrics;
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("n/a"); };
    out << '\n'
        << "accuracy " << opt(m.accuracy) << "  top-3 " << opt(m.top3_accuracy) << "  recovered " << m.recovered << "/"
        << m.incidents << "  mean recovery latency " << opt(m.mean_recovery_latency) << '\n';
  }
  return out.str();
}

}  // namespace detail

/// JSON output is byte-stable: keys are sorted and doubles print in shortest
/// round-trip form.
inline std::string emit_report(const RunReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return report_to_json(r).dump(2) + "\n";
  return detail::render_table(r);
}

// ---- batches -------------------------------------------------------------

struct BatchMetrics {
  int reports = 0;
  Metrics pooled;
  std::map<std::string, Metrics> by_fault_class;  // incidents whose ground truth includes the class
};

/// Pools every incident of every report; a single report reproduces its own metrics.
inline BatchMetrics batch_metrics(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw InvalidArgument("batch needs at least one report");
  BatchMetrics b;
  b.reports = static_cast<int>(reports.size());
  std::vector<const IncidentRecord*> all;
  std::map<std::string, std::vector<const IncidentRecord*>> by_class;
  for (const auto& r : reports)
    for (const auto& i : r.incidents) {
      all.push_back(&i);
      std::set<std::string> classes;
      for (const auto& f : i.injected) classes.insert(to_string(f.fault_class));
      for (const auto& c : classes) by_class[c].push_back(&i);
    }
  b.pooled = compute_metrics(all);
  for (const auto& [c, recs] : by_class) b.by_fault_class[c] = compute_metrics(recs);
  return b;
}

inline json batch_to_json(const BatchMetrics& b) {
  json classes = json::object();
  for (const auto& [c, m] : b.by_fault_class) classes[c] = metrics_to_json(m);
  return {{"schema-version", kReportSchemaVersion},
          {"reports", b.reports},
          {"pooled", metrics_to_json(b.pooled)},
          {"by-fault-class", classes}};
}

}  // namespace sdnheal::heal
