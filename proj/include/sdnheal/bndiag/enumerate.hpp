#pragma once

// Reference semantics for posterior_marginals(): explicit summation over
// every joint assignment. Exponential; meant for small networks and tests.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/bndiag/posterior.hpp"
#include "sdnheal/error.hpp"

namespace sdnheal::bn {

inline constexpr std::size_t kMaxEnumeratedVariables = 20;

inline Posterior enumerate_joint(const BayesNet& bn, const EvidenceMap& evidence) {
  check_evidence(bn, evidence);
  const auto& vars = bn.variables();
  const std::size_t n = vars.size();
  if (n > kMaxEnumeratedVariables)
    throw CapacityError("enumeration limited to " + std::to_string(kMaxEnumeratedVariables) + " variables, got " +
                        std::to_string(n));

  std::map<std::string, std::size_t> bit;
  for (std::size_t i = 0; i < n; ++i) bit[vars[i].id] = i;

  struct Row {
    std::size_t child;
    std::vector<std::size_t> parents;
    std::vector<double> probs;
    double leak;
  };
  std::vector<Row> rows;
  for (const auto& c : bn.cpts()) {
    Row r{bit.at(c.child), {}, c.link_probabilities, c.leak};
    for (const auto& p : c.parents) r.parents.push_back(bit.at(p));
    rows.push_back(std::move(r));
  }
  std::vector<std::pair<std::size_t, double>> priors;
  for (const auto& f : bn.faults()) priors.emplace_back(bit.at(f), bn.prior(f));

  std::uint64_t fixed_mask = 0, fixed_value = 0;
  for (const auto& [id, v] : evidence) {
    fixed_mask |= std::uint64_t{1} << bit.at(id);
    if (v) fixed_value |= std::uint64_t{1} << bit.at(id);
  }

  double z = 0.0;
  std::vector<double> z_true(n, 0.0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if ((x & fixed_mask) != fixed_value) continue;
    double w = 1.0;
    for (const auto& [b, p] : priors) w *= (x >> b & 1U) ? p : 1.0 - p;
    for (const auto& r : rows) {
      double off = 1.0 - r.leak;
      for (std::size_t i = 0; i < r.parents.size(); ++i)
        if (x >> r.parents[i] & 1U) off *= 1.0 - r.probs[i];
      w *= (x >> r.child & 1U) ? 1.0 - off : off;
    }
    z += w;
    for (const auto& [b, _] : priors)
      if (x >> b & 1U) z_true[b] += w;
  }
  if (!(z > 0.0)) throw ImpossibleEvidence("impossible evidence: zero likelihood");

  Posterior out;
  for (const auto& [b, _] : priors) out.marginals[vars[b].id] = {z_true[b] / z, (z - z_true[b]) / z};
  return out;
}

}  // namespace sdnheal::bn
