#pragma once

// File-level entry points behind the `run` and `batch` commands.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sdnheal/healloop/loop.hpp"
#include "sdnheal/healloop/report.hpp"

namespace sdnheal::heal {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitRuntime = 2 };

struct RunOptions {
  std::optional<std::uint64_t> seed;
  ReportFormat format = ReportFormat::json;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> params;
  std::optional<std::filesystem::path> strategy;
  std::optional<alarms::EvidencePolicy> policy;
  std::optional<double> threshold;
  bool suggest_only = false;
};

namespace detail {

struct Inputs {
  bn::BnParams params;
  recover::StrategyTable table;
  LoopConfig cfg;
};

inline Inputs load_inputs(const RunOptions& o) {
  Inputs in;
  in.table = recover::default_strategy_table();
  if (o.params) in.params = bn::bn_params_from_json(parse_json(read_file(*o.params)));
  if (auto v = bn::validate_bn_params(in.params); !v.empty()) throw ValidationError(std::move(v));
  if (o.strategy) in.table = recover::strategy_table_from_json(parse_json(read_file(*o.strategy)));
  in.cfg.threshold = o.threshold.value_or(in.params.threshold);
  if (o.policy) in.cfg.policy = *o.policy;
  in.cfg.suggest_only = o.suggest_only;
  if (auto v = validate_loop_config(in.cfg); !v.empty()) throw ValidationError(std::move(v));
  return in;
}

inline void deliver(const std::string& text, const std::optional<std::filesystem::path>& out, std::ostream& stdout_) {
  if (out)
    write_file(*out, text);
  else
    stdout_ << text;
}

}  // namespace detail

/// Loads, runs and writes one scenario. Exit 0 on a clean run, 1 for
/// unreadable or invalid input, 2 when the run itself fails.
inline int run_scenario(const std::filesystem::path& scenario_path, const RunOptions& opts, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  sim::Scenario scenario;
  detail::Inputs in;
  try {
    scenario = sim::load_scenario(scenario_path);
    if (opts.seed) scenario.seed = *opts.seed;
    in = detail::load_inputs(opts);
  } catch (const Error& e) {
    err << "error: " << scenario_path.string() << ": " << e.what() << '\n';
    return kExitInput;
  }

  std::string text;
  try {
    text = emit_report(run_loop(scenario, in.params, in.table, in.cfg), opts.format);
  } catch (const std::exception& e) {
    err << "error: run failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  try {
    detail::deliver(text, opts.out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

/// Scenario documents in a directory, in name order.
inline std::vector<std::filesystem::path> scenario_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.ends_with(".scenario.json")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Runs every scenario in `dir` and writes pooled metrics as json.
inline int run_batch(const std::filesystem::path& dir, const RunOptions& opts, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
  std::vector<sim::Scenario> scenarios;
  detail::Inputs in;
  try {
    for (const auto& p : scenario_files(dir)) scenarios.push_back(sim::load_scenario(p));
    if (scenarios.empty()) throw IoError("no *.scenario.json files in " + dir.string());
    in = detail::load_inputs(opts);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  std::string text;
  try {
    std::vector<RunReport> reports;
    for (auto& s : scenarios) {
      if (opts.seed) s.seed = *opts.seed;
      reports.push_back(run_loop(s, in.params, in.table, in.cfg));
    }
    text = batch_to_json(batch_metrics(reports)).dump(2) + "\n";
  } catch (const std::exception& e) {
    err << "error: batch failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  try {
    detail::deliver(text, opts.out, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace sdnheal::heal
