#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/error.hpp"

namespace sdnheal::bn {

/// Table over binary variables. Entry index bit i holds the value of scope[i]
/// (0 = false, 1 = true), so the table has 2^|scope| entries.
struct Factor {
  std::vector<std::string> scope;
  std::vector<double> table;

  bool operator==(const Factor&) const = default;
};

/// P(child = true | active parents) = 1 - (1 - leak) * prod(1 - p_i).
inline double noisy_or_row(std::span<const double> active_link_probabilities, double leak) {
  if (!(leak >= 0.0 && leak <= 1.0)) throw InvalidArgument("leak outside [0,1]");
  double q = 1.0 - leak;
  for (double p : active_link_probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("link probability outside [0,1]");
    q *= 1.0 - p;
  }
  return 1.0 - q;
}

inline Factor prior_factor(const std::string& fault, double prior) { return {{fault}, {1.0 - prior, prior}}; }

/// Full CPT table with scope parents..., child.
inline Factor cpt_factor(const NoisyOrCpt& cpt) {
  const std::size_t k = cpt.parents.size();
  Factor f;
  f.scope = cpt.parents;
  f.scope.push_back(cpt.child);
  f.table.resize(std::size_t{1} << (k + 1));
  std::vector<double> active;
  active.reserve(k);
  for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
    active.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (row >> i & 1U) active.push_back(cpt.link_probabilities[i]);
    double p_true = noisy_or_row(active, cpt.leak);
    f.table[row] = 1.0 - p_true;
    f.table[row | (std::size_t{1} << k)] = p_true;
  }
  return f;
}

/// Fixes one scope variable to `value` and drops it from the scope.
inline Factor slice(const Factor& f, const std::string& var, bool value) {
  std::size_t pos = 0;
  while (pos < f.scope.size() && f.scope[pos] != var) ++pos;
  if (pos == f.scope.size()) return f;
  Factor out;
  out.scope = f.scope;
  out.scope.erase(out.scope.begin() + static_cast<std::ptrdiff_t>(pos));
  out.table.resize(f.table.size() / 2);
  const std::size_t low = (std::size_t{1} << pos) - 1;
  for (std::size_t i = 0; i < out.table.size(); ++i) {
    std::size_t src = ((i & ~low) << 1) | (i & low) | (value ? std::size_t{1} << pos : 0);
    out.table[i] = f.table[src];
  }
  return out;
}

/// One prior factor per fault and one full CPT factor per symptom, with
/// observed symptoms sliced out of their factor's scope.
inline std::vector<Factor> compile_factors(const BayesNet& bn, const EvidenceMap& evidence) {
  check_evidence(bn, evidence);
  std::vector<Factor> out;
  out.reserve(bn.faults().size() + bn.cpts().size());
  for (const auto& f : bn.faults()) out.push_back(prior_factor(f, bn.prior(f)));
  for (const auto& cpt : bn.cpts()) {
    Factor f = cpt_factor(cpt);
    if (auto it = evidence.find(cpt.child); it != evidence.end()) f = slice(f, cpt.child, it->second);
    out.push_back(std::move(f));
  }
  return out;
}

namespace detail {

/// Inference-ready factors. Equal in product to compile_factors() up to a
/// positive constant, but cheaper:
///  - unobserved symptoms are barren (their CPT sums to one) and are dropped;
///  - a negative finding factorizes exactly into one unary factor per parent,
///    P(Y=false | x) = (1 - leak) * prod_i (1 - p_i)^{x_i};
///  - a positive finding keeps the full sliced table.
inline std::vector<Factor> compile_reduced(const BayesNet& bn, const EvidenceMap& evidence) {
  check_evidence(bn, evidence);
  std::vector<Factor> out;
  for (const auto& f : bn.faults()) out.push_back(prior_factor(f, bn.prior(f)));
  for (const auto& cpt : bn.cpts()) {
    auto it = evidence.find(cpt.child);
    if (it == evidence.end()) continue;
    if (it->second) {
      out.push_back(slice(cpt_factor(cpt), cpt.child, true));
      continue;
    }
    if (cpt.leak >= 1.0) throw ImpossibleEvidence("impossible evidence: " + cpt.child + " = false with leak 1");
    for (std::size_t i = 0; i < cpt.parents.size(); ++i)
      out.push_back({{cpt.parents[i]}, {1.0, 1.0 - cpt.link_probabilities[i]}});
  }
  return out;
}

}  // namespace detail
}  // namespace sdnheal::bn
