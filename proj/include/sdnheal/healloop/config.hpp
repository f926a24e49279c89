#pragma once

#include <string>
#include <vector>

#include "sdnheal/alarmpipe/evidence.hpp"
#include "sdnheal/error.hpp"
#include "sdnheal/json_util.hpp"

namespace sdnheal::heal {

struct LoopConfig {
  int evidence_window = 1;  // ticks
  double threshold = 0.5;
  int verify_timeout = 3;  // ticks
  alarms::EvidencePolicy policy = alarms::EvidencePolicy::closed_world;
  int max_widenings = 2;
  bool suggest_only = false;  // plan but never touch the network

  bool operator==(const LoopConfig&) const = default;
};

inline std::vector<std::string> validate_loop_config(const LoopConfig& c) {
  std::vector<std::string> out;
  if (c.evidence_window < 1) out.push_back("evidence-window must be positive");
  if (!(c.threshold > 0.0 && c.threshold < 1.0)) out.push_back("threshold must lie in (0,1)");
  if (c.verify_timeout < 1) out.push_back("verify-timeout must be positive");
  if (c.max_widenings < 0) out.push_back("max-widenings must not be negative");
  return out;
}

inline json loop_config_to_json(const LoopConfig& c) {
  return {{"evidence-window", c.evidence_window}, {"threshold", c.threshold},
          {"verify-timeout", c.verify_timeout},   {"evidence-policy", alarms::to_string(c.policy)},
          {"max-widenings", c.max_widenings},     {"suggest-only", c.suggest_only}};
}

inline LoopConfig loop_config_from_json(const json& j) {
  const LoopConfig d;
  LoopConfig c;
  c.evidence_window = jsonio::get_or<int>(j, "evidence-window", d.evidence_window, "loop config");
  c.threshold = jsonio::get_or<double>(j, "threshold", d.threshold, "loop config");
  c.verify_timeout = jsonio::get_or<int>(j, "verify-timeout", d.verify_timeout, "loop config");
  c.policy = alarms::parse_evidence_policy(
      jsonio::get_or<std::string>(j, "evidence-policy", alarms::to_string(d.policy), "loop config"));
  c.max_widenings = jsonio::get_or<int>(j, "max-widenings", d.max_widenings, "loop config");
  c.suggest_only = jsonio::get_or<bool>(j, "suggest-only", d.suggest_only, "loop config");
  return c;
}

}  // namespace sdnheal::heal
