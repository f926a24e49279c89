#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdnheal/bndiag/posterior.hpp"
#include "sdnheal/error.hpp"
#include "sdnheal/json_util.hpp"

namespace sdnheal::bn {

enum class Verdict { confident, suspect, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::confident: return "confident";
    case Verdict::suspect: return "suspect";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline Verdict parse_verdict(const std::string& s) {
  if (s == "confident") return Verdict::confident;
  if (s == "suspect") return Verdict::suspect;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw ParseError("unknown verdict '" + s + "'");
}

/// A suspect needs a posterior at least this many times its prior.
inline constexpr double kSuspectLift = 10.0;

struct Diagnosis {
  std::vector<RankedFault> ranked;
  Verdict verdict = Verdict::inconclusive;
  double threshold = 0.5;

  bool actionable() const { return verdict != Verdict::inconclusive && !ranked.empty(); }
  const RankedFault& top() const {
    if (ranked.empty()) throw InvalidArgument("empty diagnosis");
    return ranked.front();
  }

  bool operator==(const Diagnosis&) const = default;
};

/// confident: every fault at or above the threshold. suspect: only the best
/// fault, when it rose to kSuspectLift times its prior. Otherwise inconclusive
/// with the whole ranking attached.
inline Diagnosis map_diagnosis(const Posterior& p, double threshold, const std::map<std::string, double>& priors) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidArgument("threshold must lie in (0,1)");
  Diagnosis d;
  d.threshold = threshold;
  auto ranking = p.ranking();
  for (const auto& r : ranking)
    if (r.second >= threshold) d.ranked.push_back(r);
  if (!d.ranked.empty()) {
    d.verdict = Verdict::confident;
    return d;
  }
  if (!ranking.empty()) {
    auto it = priors.find(ranking.front().first);
    if (it != priors.end() && ranking.front().second >= kSuspectLift * it->second) {
      d.verdict = Verdict::suspect;
      d.ranked = {ranking.front()};
      return d;
    }
  }
  d.verdict = Verdict::inconclusive;
  d.ranked = std::move(ranking);
  return d;
}

inline json diagnosis_to_json(const Diagnosis& d) {
  json ranked = json::array();
  for (const auto& [id, p] : d.ranked) ranked.push_back({{"fault", id}, {"posterior", p}});
  return {{"verdict", to_string(d.verdict)}, {"threshold", d.threshold}, {"ranked", ranked}};
}

inline Diagnosis diagnosis_from_json(const json& j) {
  Diagnosis d;
  d.verdict = parse_verdict(jsonio::get<std::string>(j, "verdict", "diagnosis"));
  d.threshold = jsonio::get<double>(j, "threshold", "diagnosis");
  for (const auto& r : jsonio::array(j, "ranked", "diagnosis"))
    d.ranked.emplace_back(jsonio::get<std::string>(r, "fault", "ranked"), jsonio::get<double>(r, "posterior", "ranked"));
  return d;
}

}  // namespace sdnheal::bn
