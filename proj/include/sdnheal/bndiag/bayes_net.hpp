#pragma once

// Bipartite fault -> symptom Bayesian networks with noisy-OR conditionals.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sdnheal/error.hpp"
#include "sdnheal/json_util.hpp"
#include "sdnheal/vocabulary.hpp"

namespace sdnheal::bn {

/// Observed symptom values keyed by symptom-variable id. Absent keys are unobserved.
using EvidenceMap = std::map<std::string, bool>;

enum class VarKind { fault, symptom };

struct BnVariable {
  std::string id;
  VarKind kind = VarKind::fault;
  ComponentId component;                   // empty for abstract networks
  std::optional<FaultClass> fault_class;   // faults built from a topology
  std::optional<Symptom> symptom;          // symptoms built from a topology

  bool operator==(const BnVariable&) const = default;
};

struct NoisyOrCpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<double> link_probabilities;  // one per parent
  double leak = 0.0;

  bool operator==(const NoisyOrCpt&) const = default;
};

inline constexpr std::size_t kDefaultMaxParents = 20;

/// Structural checks shared by the constructor and by tests.
inline std::vector<std::string> check_network(const std::vector<BnVariable>& variables,
                                              const std::map<std::string, double>& priors,
                                              const std::vector<NoisyOrCpt>& cpts, std::size_t max_parents) {
  std::vector<std::string> out;
  std::map<std::string, VarKind> kinds;
  for (const auto& v : variables) {
    if (v.id.empty()) out.push_back("variable with empty id");
    if (!kinds.emplace(v.id, v.kind).second) out.push_back("duplicate variable: " + v.id);
  }
  for (const auto& [id, kind] : kinds) {
    if (kind != VarKind::fault) continue;
    auto it = priors.find(id);
    if (it == priors.end()) {
      out.push_back("missing prior: " + id);
    } else if (!(it->second > 0.0 && it->second < 1.0)) {
      out.push_back("prior outside (0,1): " + id);
    }
  }
  for (const auto& [id, _] : priors) {
    auto it = kinds.find(id);
    if (it == kinds.end() || it->second != VarKind::fault) out.push_back("prior for non-fault: " + id);
  }
  std::set<std::string> with_cpt;
  for (const auto& c : cpts) {
    auto it = kinds.find(c.child);
    if (it == kinds.end() || it->second != VarKind::symptom) {
      out.push_back("cpt child is not a symptom: " + c.child);
      continue;
    }
    if (!with_cpt.insert(c.child).second) out.push_back("duplicate cpt: " + c.child);
    if (c.parents.empty()) out.push_back("symptom without parents: " + c.child);
    if (c.parents.size() > max_parents)
      out.push_back("parent cap exceeded: " + c.child + " has " + std::to_string(c.parents.size()) + " parents");
    if (c.parents.size() != c.link_probabilities.size())
      out.push_back("link-probability count mismatch: " + c.child);
    std::set<std::string> seen;
    for (const auto& p : c.parents) {
      auto pk = kinds.find(p);
      if (pk == kinds.end() || pk->second != VarKind::fault) out.push_back("non-fault parent " + p + " of " + c.child);
      if (!seen.insert(p).second) out.push_back("repeated parent " + p + " of " + c.child);
    }
    for (double q : c.link_probabilities)
      if (!(q >= 0.0 && q <= 1.0)) out.push_back("link probability outside [0,1]: " + c.child);
    if (!(c.leak >= 0.0 && c.leak <= 1.0)) out.push_back("leak outside [0,1]: " + c.child);
  }
  for (const auto& [id, kind] : kinds)
    if (kind == VarKind::symptom && !with_cpt.count(id)) out.push_back("symptom without cpt: " + id);
  return out;
}

/// Immutable network. Faults only point at symptoms, so the graph is a DAG by construction.
class BayesNet {
 public:
  BayesNet() = default;

  BayesNet(std::vector<BnVariable> variables, std::map<std::string, double> priors, std::vector<NoisyOrCpt> cpts,
           std::size_t max_parents = kDefaultMaxParents)
      : variables_(std::move(variables)), priors_(std::move(priors)), cpts_(std::move(cpts)), max_parents_(max_parents) {
    if (auto v = check_network(variables_, priors_, cpts_, max_parents_); !v.empty()) throw ValidationError(std::move(v));
    std::stable_sort(variables_.begin(), variables_.end(), [](const BnVariable& a, const BnVariable& b) {
      return std::pair(a.kind, a.id) < std::pair(b.kind, b.id);
    });
    std::sort(cpts_.begin(), cpts_.end(), [](const NoisyOrCpt& a, const NoisyOrCpt& b) { return a.child < b.child; });
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      var_index_[variables_[i].id] = i;
      (variables_[i].kind == VarKind::fault ? faults_ : symptoms_).push_back(variables_[i].id);
    }
    for (std::size_t i = 0; i < cpts_.size(); ++i) cpt_index_[cpts_[i].child] = i;
  }

  const std::vector<BnVariable>& variables() const { return variables_; }
  const std::map<std::string, double>& priors() const { return priors_; }
  const std::vector<NoisyOrCpt>& cpts() const { return cpts_; }
  std::size_t max_parents() const { return max_parents_; }

  /// Fault ids in lexicographic order.
  const std::vector<std::string>& faults() const { return faults_; }
  /// Symptom ids in lexicographic order.
  const std::vector<std::string>& symptoms() const { return symptoms_; }

  const BnVariable* find(const std::string& id) const {
    auto it = var_index_.find(id);
    return it == var_index_.end() ? nullptr : &variables_[it->second];
  }
  bool is_fault(const std::string& id) const {
    const auto* v = find(id);
    return v && v->kind == VarKind::fault;
  }
  bool is_symptom(const std::string& id) const {
    const auto* v = find(id);
    return v && v->kind == VarKind::symptom;
  }
  const NoisyOrCpt& cpt(const std::string& child) const {
    auto it = cpt_index_.find(child);
    if (it == cpt_index_.end()) throw NotFoundError("no cpt for " + child);
    return cpts_[it->second];
  }
  double prior(const std::string& fault) const {
    auto it = priors_.find(fault);
    if (it == priors_.end()) throw NotFoundError("no prior for " + fault);
    return it->second;
  }

  bool operator==(const BayesNet& o) const {
    return variables_ == o.variables_ && priors_ == o.priors_ && cpts_ == o.cpts_ && max_parents_ == o.max_parents_;
  }

 private:
  std::vector<BnVariable> variables_;
  std::map<std::string, double> priors_;
  std::vector<NoisyOrCpt> cpts_;
  std::size_t max_parents_ = kDefaultMaxParents;
  std::vector<std::string> faults_;
  std::vector<std::string> symptoms_;
  std::map<std::string, std::size_t> var_index_;
  std::map<std::string, std::size_t> cpt_index_;
};

inline void check_evidence(const BayesNet& bn, const EvidenceMap& evidence) {
  for (const auto& [id, _] : evidence)
    if (!bn.is_symptom(id)) throw NotFoundError("evidence on unknown symptom variable: " + id);
}

inline json bn_to_json(const BayesNet& bn) {
  json vars = json::array();
  for (const auto& v : bn.variables()) {
    json e = {{"id", v.id}, {"kind", v.kind == VarKind::fault ? "fault" : "symptom"}};
    if (!v.component.empty()) e["component"] = v.component;
    if (v.fault_class) e["class"] = to_string(*v.fault_class);
    if (v.symptom) e["symptom"] = to_string(*v.symptom);
    vars.push_back(e);
  }
  json cpts = json::array();
  for (const auto& c : bn.cpts())
    cpts.push_back(
        {{"child", c.child}, {"parents", c.parents}, {"link-probabilities", c.link_probabilities}, {"leak", c.leak}});
  return {{"schema-version", 1},
          {"max-parents", bn.max_parents()},
          {"variables", vars},
          {"priors", bn.priors()},
          {"cpts", cpts}};
}

inline BayesNet bn_from_json(const json& j) {
  int version = jsonio::get<int>(j, "schema-version", "bn");
  if (version != 1) throw ParseError("bn: unsupported schema-version " + std::to_string(version));
  std::vector<BnVariable> vars;
  for (const auto& e : jsonio::array(j, "variables", "bn")) {
    BnVariable v;
    v.id = jsonio::get<std::string>(e, "id", "variable");
    auto kind = jsonio::get<std::string>(e, "kind", "variable " + v.id);
    if (kind != "fault" && kind != "symptom") throw ParseError("variable " + v.id + ": bad kind '" + kind + "'");
    v.kind = kind == "fault" ? VarKind::fault : VarKind::symptom;
    v.component = jsonio::get_or<std::string>(e, "component", "", "variable " + v.id);
    if (e.contains("class")) v.fault_class = parse_fault_class(jsonio::get<std::string>(e, "class", v.id));
    if (e.contains("symptom")) v.symptom = parse_symptom(jsonio::get<std::string>(e, "symptom", v.id));
    vars.push_back(std::move(v));
  }
  auto priors = jsonio::get<std::map<std::string, double>>(j, "priors", "bn");
  std::vector<NoisyOrCpt> cpts;
  for (const auto& e : jsonio::array(j, "cpts", "bn")) {
    NoisyOrCpt c;
    c.child = jsonio::get<std::string>(e, "child", "cpt");
    c.parents = jsonio::get<std::vector<std::string>>(e, "parents", "cpt " + c.child);
    c.link_probabilities = jsonio::get<std::vector<double>>(e, "link-probabilities", "cpt " + c.child);
    c.leak = jsonio::get<double>(e, "leak", "cpt " + c.child);
    cpts.push_back(std::move(c));
  }
  auto cap = jsonio::get_or<std::size_t>(j, "max-parents", kDefaultMaxParents, "bn");
  return BayesNet(std::move(vars), std::move(priors), std::move(cpts), cap);
}

inline EvidenceMap evidence_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("evidence: expected an object of symptom id -> boolean");
  EvidenceMap ev;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_boolean()) throw ParseError("evidence: value for '" + k + "' must be a boolean");
    ev[k] = v.get<bool>();
  }
  return ev;
}

}  // namespace sdnheal::bn
