#pragma once

// Exact marginals by variable elimination with a greedy min-fill order.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/bndiag/factor.hpp"
#include "sdnheal/bndiag/posterior.hpp"
#include "sdnheal/error.hpp"

namespace sdnheal::bn {
namespace detail {

inline constexpr std::size_t kMaxEliminationWidth = 30;

/// Factor over integer variable ids; `vars` is strictly ascending.
struct IndexedFactor {
  std::vector<int> vars;
  std::vector<double> table;
};

inline IndexedFactor to_indexed(const Factor& f, const std::map<std::string, int>& index) {
  const std::size_t n = f.scope.size();
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = index.at(f.scope[i]);
  std::vector<std::size_t> perm(n);  // perm[j] = source position of the j-th sorted var
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  IndexedFactor out;
  out.vars.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.vars[j] = ids[perm[j]];
  out.table.resize(f.table.size());
  for (std::size_t dst = 0; dst < out.table.size(); ++dst) {
    std::size_t src = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (dst >> j & 1U) src |= std::size_t{1} << perm[j];
    out.table[dst] = f.table[src];
  }
  return out;
}

/// Multiplies `factors` and sums `var` out, without materializing the product.
/// The result is rescaled so its largest entry is 1 (normalization happens at the end).
inline IndexedFactor multiply_and_sum_out(const std::vector<const IndexedFactor*>& factors, int var) {
  std::vector<int> rest;
  for (const auto* f : factors)
    for (int v : f->vars)
      if (v != var) rest.push_back(v);
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());

  std::vector<int> all{var};
  all.insert(all.end(), rest.begin(), rest.end());
  const std::size_t n = all.size();
  if (n > kMaxEliminationWidth)
    throw CapacityError("elimination width " + std::to_string(n) + " exceeds " + std::to_string(kMaxEliminationWidth));

  // delta[f][p]: index change in factor f when counting flips bit p on and bits below p off.
  const std::size_t nf = factors.size();
  std::vector<std::vector<std::size_t>> delta(nf, std::vector<std::size_t>(n));
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& fv = factors[f]->vars;
    std::size_t below = 0;
    for (std::size_t p = 0; p < n; ++p) {
      auto it = std::lower_bound(fv.begin(), fv.end(), all[p]);
      std::size_t stride =
          (it != fv.end() && *it == all[p]) ? std::size_t{1} << static_cast<std::size_t>(it - fv.begin()) : 0;
      delta[f][p] = stride - below;  // modular arithmetic; the sum is exact
      below += stride;
    }
  }

  IndexedFactor out;
  out.vars = std::move(rest);
  out.table.assign(std::size_t{1} << (n - 1), 0.0);
  std::vector<std::size_t> idx(nf, 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0;; ++a) {
    double v = 1.0;
    for (std::size_t f = 0; f < nf; ++f) v *= factors[f]->table[idx[f]];
    out.table[a >> 1] += v;
    if (a + 1 == total) break;
    auto p = static_cast<std::size_t>(std::countr_one(a));
    for (std::size_t f = 0; f < nf; ++f) idx[f] += delta[f][p];
  }

  double peak = *std::max_element(out.table.begin(), out.table.end());
  if (peak > 0.0)
    for (double& x : out.table) x /= peak;
  return out;
}

/// Greedy min-fill over the interaction graph of `vars` (ascending ids);
/// `keep` is never eliminated. Ties go to the smallest id.
inline std::vector<int> min_fill_order(const std::vector<int>& vars, const std::vector<const IndexedFactor*>& factors,
                                       int keep) {
  const std::size_t m = vars.size();
  std::map<int, std::size_t> local;
  for (std::size_t i = 0; i < m; ++i) local[vars[i]] = i;
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (const auto* f : factors)
    for (int a : f->vars)
      for (int b : f->vars)
        if (a != b) adj[local.at(a)][local.at(b)] = 1;

  std::vector<char> gone(m, 0);
  std::vector<int> order;
  order.reserve(m);
  for (std::size_t step = 0; step + 1 < m; ++step) {
    std::size_t best = m;
    std::size_t best_fill = 0;
    for (std::size_t x = 0; x < m; ++x) {
      if (gone[x] || vars[x] == keep) continue;
      std::vector<std::size_t> nbrs;
      for (std::size_t y = 0; y < m; ++y)
        if (!gone[y] && adj[x][y]) nbrs.push_back(y);
      std::size_t fill = 0;
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
          if (!adj[nbrs[i]][nbrs[j]]) ++fill;
      if (best == m || fill < best_fill) {
        best = x;
        best_fill = fill;
      }
    }
    if (best == m) break;
    for (std::size_t y = 0; y < m; ++y) {
      if (gone[y] || !adj[best][y]) continue;
      for (std::size_t z = 0; z < m; ++z)
        if (z != y && !gone[z] && adj[best][z]) adj[y][z] = adj[z][y] = 1;
    }
    gone[best] = 1;
    order.push_back(vars[best]);
  }
  return order;
}

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

/// Marginals of `queries` from a factor set by per-query variable elimination,
/// restricted to the query's connected component of the factor graph.
inline Posterior eliminate_marginals(const std::vector<Factor>& factors, const std::vector<std::string>& queries) {
  std::vector<std::string> names;
  for (const auto& f : factors) names.insert(names.end(), f.scope.begin(), f.scope.end());
  names.insert(names.end(), queries.begin(), queries.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);

  std::vector<detail::IndexedFactor> indexed;
  indexed.reserve(factors.size());
  for (const auto& f : factors) {
    if (f.table.size() != (std::size_t{1} << f.scope.size())) throw InvalidArgument("factor table size mismatch");
    if (f.scope.empty()) {
      if (f.table.at(0) == 0.0) throw ImpossibleEvidence("impossible evidence: zero constant factor");
      continue;
    }
    indexed.push_back(detail::to_indexed(f, index));
  }

  std::vector<int> parent(names.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& f : indexed)
    for (int v : f.vars) parent[detail::find_root(parent, v)] = detail::find_root(parent, f.vars.front());

  std::map<int, std::vector<const detail::IndexedFactor*>> by_component;
  for (const auto& f : indexed) by_component[detail::find_root(parent, f.vars.front())].push_back(&f);

  Posterior out;
  for (const auto& q : queries) {
    const int qi = index.at(q);
    const auto& comp = by_component[detail::find_root(parent, qi)];
    if (comp.empty()) throw NotFoundError("query variable appears in no factor: " + q);

    std::vector<int> vars;
    for (const auto* f : comp) vars.insert(vars.end(), f->vars.begin(), f->vars.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    std::vector<detail::IndexedFactor> produced;
    produced.reserve(vars.size());
    std::vector<const detail::IndexedFactor*> pool = comp;
    for (int x : detail::min_fill_order(vars, comp, qi)) {
      std::vector<const detail::IndexedFactor*> bucket;
      std::vector<const detail::IndexedFactor*> keep;
      for (const auto* f : pool)
        (std::binary_search(f->vars.begin(), f->vars.end(), x) ? bucket : keep).push_back(f);
      if (bucket.empty()) continue;
      produced.push_back(detail::multiply_and_sum_out(bucket, x));
      keep.push_back(&produced.back());
      pool = std::move(keep);
    }

    double z0 = 1.0, z1 = 1.0;
    for (const auto* f : pool) {
      if (f->vars.empty()) {
        z0 *= f->table[0];
        z1 *= f->table[0];
      } else {
        z0 *= f->table[0];
        z1 *= f->table[1];
      }
    }
    const double z = z0 + z1;
    if (!(z > 0.0)) throw ImpossibleEvidence("impossible evidence: zero likelihood for component of " + q);
    out.marginals[q] = {z1 / z, z0 / z};
  }
  return out;
}

/// Exact P(F = true | evidence) for every fault of the network.
inline Posterior posterior_marginals(const BayesNet& bn, const EvidenceMap& evidence) {
  return eliminate_marginals(detail::compile_reduced(bn, evidence), bn.faults());
}

}  // namespace sdnheal::bn
