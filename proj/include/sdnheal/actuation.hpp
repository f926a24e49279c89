#pragma once

// Recovery actions and their outcomes: the contract between the recovery
// block (which plans them) and the actuators (which apply them).

#include <map>
#include <string>
#include <vector>

#include "sdnheal/json_util.hpp"
#include "sdnheal/vocabulary.hpp"

namespace sdnheal {

/// Params keys in use: "avoid" (reroute), "destination" and "clients" (load-balance-ap).
struct RecoveryAction {
  ActionKind kind = ActionKind::open_repair_ticket;
  ComponentId target;
  std::map<std::string, std::vector<std::string>> params;

  bool operator==(const RecoveryAction&) const = default;
  auto operator<=>(const RecoveryAction&) const = default;
};

enum class OutcomeStatus { success, failure };

struct ActionOutcome {
  RecoveryAction action;
  OutcomeStatus status = OutcomeStatus::success;
  std::string detail;

  bool ok() const { return status == OutcomeStatus::success; }
  bool operator==(const ActionOutcome&) const = default;
};

inline std::string describe(const RecoveryAction& a) {
  std::string out = to_string(a.kind) + "(" + a.target;
  for (const auto& [k, vs] : a.params) {
    out += ", " + k + " {";
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i];
    out += "}";
  }
  return out + ")";
}

inline json action_to_json(const RecoveryAction& a) {
  json params = json::object();
  for (const auto& [k, v] : a.params) params[k] = v;
  return {{"kind", to_string(a.kind)}, {"target", a.target}, {"params", params}};
}

inline RecoveryAction action_from_json(const json& j) {
  RecoveryAction a;
  a.kind = parse_action_kind(jsonio::get<std::string>(j, "kind", "action"));
  a.target = jsonio::get<std::string>(j, "target", "action");
  if (j.contains("params"))
    a.params = jsonio::get<std::map<std::string, std::vector<std::string>>>(j, "params", "action");
  return a;
}

inline json outcome_to_json(const ActionOutcome& o) {
  return {{"action", action_to_json(o.action)},
          {"status", o.ok() ? "success" : "failure"},
          {"detail", o.detail}};
}

inline ActionOutcome outcome_from_json(const json& j) {
  ActionOutcome o;
  o.action = action_from_json(jsonio::field(j, "action", "outcome"));
  auto status = jsonio::get<std::string>(j, "status", "outcome");
  if (status != "success" && status != "failure") throw ParseError("outcome: bad status '" + status + "'");
  o.status = status == "success" ? OutcomeStatus::success : OutcomeStatus::failure;
  o.detail = jsonio::get<std::string>(j, "detail", "outcome");
  return o;
}

}  // namespace sdnheal
