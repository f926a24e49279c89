#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sdnheal/json_util.hpp"
#include "sdnheal/netmodel/topology_io.hpp"
#include "sdnheal/simkernel/fault.hpp"

namespace sdnheal::sim {

enum class NoiseMode { deterministic, stochastic };

struct NoiseConfig {
  double alarm_loss_probability = 0.0;
  double spurious_alarm_rate = 0.0;
  NoiseMode mode = NoiseMode::deterministic;

  bool operator==(const NoiseConfig&) const = default;
};

inline NoiseConfig deterministic_noise() { return {}; }

inline NoiseConfig stochastic_noise(double loss, double spurious) {
  return {loss, spurious, NoiseMode::stochastic};
}

struct Scenario {
  std::string name;
  net::Topology topology;
  std::vector<FaultEvent> faults;  // ordered by at_tick
  NoiseConfig noise;
  std::uint64_t seed = 0;
  int horizon = 0;
  int repair_delay = 5;

  bool operator==(const Scenario&) const = default;
};

inline std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out = net::validate_topology(s.topology);
  if (s.horizon < 0) out.push_back("negative horizon");
  if (s.repair_delay < 1) out.push_back("repair-delay must be at least 1");
  const auto& n = s.noise;
  if (!(n.alarm_loss_probability >= 0.0 && n.alarm_loss_probability <= 1.0))
    out.push_back("alarm-loss-probability outside [0,1]");
  if (!(n.spurious_alarm_rate >= 0.0)) out.push_back("negative spurious-alarm-rate");
  if (n.mode == NoiseMode::deterministic && (n.alarm_loss_probability != 0.0 || n.spurious_alarm_rate != 0.0))
    out.push_back("deterministic noise mode requires zero loss and zero spurious rate");
  int prev = 0;
  for (const auto& f : s.faults) {
    if (f.at_tick < 0) out.push_back("negative at-tick for fault on " + f.target);
    if (f.at_tick >= s.horizon) out.push_back("fault at-tick beyond horizon: " + f.target);
    if (f.at_tick < prev) out.push_back("faults not ordered by at-tick");
    prev = std::max(prev, f.at_tick);
    if (!s.topology.category(f.target)) {
      out.push_back("dangling reference: fault target " + f.target);
    } else if (!is_compatible(s.topology, f.target, f.fault_class)) {
      out.push_back("incompatible fault: " + to_string(f.fault_class) + " on " + f.target);
    }
  }
  return out;
}

inline json noise_to_json(const NoiseConfig& n) {
  return {{"mode", n.mode == NoiseMode::deterministic ? "deterministic" : "stochastic"},
          {"alarm-loss-probability", n.alarm_loss_probability},
          {"spurious-alarm-rate", n.spurious_alarm_rate}};
}

inline NoiseConfig noise_from_json(const json& j) {
  NoiseConfig n;
  auto mode = jsonio::get_or<std::string>(j, "mode", "deterministic", "noise");
  if (mode == "deterministic") {
    n.mode = NoiseMode::deterministic;
  } else if (mode == "stochastic") {
    n.mode = NoiseMode::stochastic;
  } else {
    throw ParseError("noise: unknown mode '" + mode + "'");
  }
  n.alarm_loss_probability = jsonio::get_or<double>(j, "alarm-loss-probability", 0.0, "noise");
  n.spurious_alarm_rate = jsonio::get_or<double>(j, "spurious-alarm-rate", 0.0, "noise");
  return n;
}

inline json fault_to_json(const FaultEvent& f) {
  return {{"target", f.target}, {"class", to_string(f.fault_class)}, {"at-tick", f.at_tick}};
}

inline FaultEvent fault_from_json(const json& j) {
  FaultEvent f;
  f.target = jsonio::get<std::string>(j, "target", "fault");
  f.fault_class = parse_fault_class(jsonio::get<std::string>(j, "class", "fault"));
  f.at_tick = jsonio::get<int>(j, "at-tick", "fault");
  return f;
}

inline json scenario_to_json(const Scenario& s) {
  json faults = json::array();
  for (const auto& f : s.faults) faults.push_back(fault_to_json(f));
  return {{"schema-version", 1},
          {"name", s.name},
          {"topology", net::topology_to_json(s.topology)},
          {"faults", faults},
          {"noise", noise_to_json(s.noise)},
          {"seed", s.seed},
          {"horizon", s.horizon},
          {"repair-delay", s.repair_delay}};
}

/// `topology` may be inline or a path string, resolved against `base_dir`.
inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  Scenario s;
  int version = jsonio::get<int>(j, "schema-version", "scenario");
  if (version != 1) throw ParseError("scenario: unsupported schema-version " + std::to_string(version));
  s.name = jsonio::get_or<std::string>(j, "name", "", "scenario");
  const json& topo = jsonio::field(j, "topology", "scenario");
  if (topo.is_string()) {
    std::filesystem::path p = topo.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    s.topology = net::topology_from_json(parse_json(read_file(p)));
  } else {
    s.topology = net::topology_from_json(topo);
  }
  for (const auto& f : jsonio::array(j, "faults", "scenario")) s.faults.push_back(fault_from_json(f));
  if (j.contains("noise")) s.noise = noise_from_json(j.at("noise"));
  s.seed = jsonio::get<std::uint64_t>(j, "seed", "scenario");
  s.horizon = jsonio::get<int>(j, "horizon", "scenario");
  s.repair_delay = jsonio::get_or<int>(j, "repair-delay", 5, "scenario");
  return s;
}

/// Reads, parses and validates a scenario file.
inline Scenario load_scenario(const std::filesystem::path& path) {
  Scenario s = scenario_from_json(parse_json(read_file(path)), path.parent_path());
  if (auto v = validate_scenario(s); !v.empty()) throw ValidationError(std::move(v));
  return s;
}

}  // namespace sdnheal::sim
