#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sdnheal/error.hpp"
#include "sdnheal/json_util.hpp"

namespace sdnheal::bn {

struct Marginal {
  double p_true = 0.0;
  double p_false = 1.0;

  bool operator==(const Marginal&) const = default;
};

using RankedFault = std::pair<std::string, double>;

/// Marginal P(F | evidence) for every fault variable.
struct Posterior {
  std::map<std::string, Marginal> marginals;

  double operator[](const std::string& fault) const {
    auto it = marginals.find(fault);
    if (it == marginals.end()) throw NotFoundError("no marginal for " + fault);
    return it->second.p_true;
  }

  /// Descending by P(true); ties by id.
  std::vector<RankedFault> ranking() const {
    std::vector<RankedFault> out;
    out.reserve(marginals.size());
    for (const auto& [id, m] : marginals) out.emplace_back(id, m.p_true);
    std::stable_sort(out.begin(), out.end(), [](const RankedFault& a, const RankedFault& b) {
      return a.second > b.second;  // stable over the id-ordered map
    });
    return out;
  }

  bool operator==(const Posterior&) const = default;
};

inline json posterior_to_json(const Posterior& p) {
  json out = json::object();
  for (const auto& [id, m] : p.marginals) out[id] = m.p_true;
  return out;
}

inline Posterior posterior_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("posterior: expected an object");
  Posterior p;
  for (const auto& [id, v] : j.items()) {
    if (!v.is_number()) throw ParseError("posterior: '" + id + "' must be a number");
    double t = v.get<double>();
    p.marginals[id] = {t, 1.0 - t};
  }
  return p;
}

}  // namespace sdnheal::bn
