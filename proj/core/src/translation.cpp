#include "teamlab/translation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "teamlab/model.hpp"

namespace teamlab {

namespace {

void require_unit(double v, const std::string& what) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) throw ValidationError(what + " must lie in [0, 1]");
}

}  // namespace

void FactorWeights::validate() const {
  if (weights.empty()) throw ValidationError("factor weights are empty");
  std::set<std::string> seen;
  double sum = 0.0;
  for (const auto& [name, w] : weights) {
    if (!seen.insert(name).second) throw ValidationError("duplicate factor '" + name + "'");
    require_unit(w, "weight of factor '" + name + "'");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("factor weights must sum to 1");
}

FactorWeights FactorWeights::human_default() {
  return {{{"tenure", 0.30}, {"social", 0.35}, {"criticality", 0.20}, {"commitment", 0.15}}};
}

FactorWeights FactorWeights::agent_default() {
  return {{{"training", 0.35}, {"architecture", 0.30}, {"objective", 0.20}, {"history", 0.15}}};
}

double loyalty_score(const MemberFactors& factors, const FactorWeights& weights) {
  weights.validate();
  std::map<std::string, double> scores;
  for (const auto& [name, s] : factors.scores) {
    require_unit(s, "score '" + name + "' of member '" + factors.member_id + "'");
    if (!scores.emplace(name, s).second) {
      throw ValidationError("member '" + factors.member_id + "' lists factor '" + name + "' twice");
    }
  }
  if (scores.size() != weights.weights.size()) {
    throw ValidationError("member '" + factors.member_id + "' has " + std::to_string(scores.size()) +
                          " factor scores, expected " + std::to_string(weights.weights.size()));
  }
  double theta = 0.0;
  for (const auto& [name, w] : weights.weights) {
    const auto it = scores.find(name);
    if (it == scores.end()) {
      throw ValidationError("member '" + factors.member_id + "' is missing factor '" + name + "'");
    }
    theta += w * it->second;
  }
  return std::clamp(theta, 0.0, 1.0);
}

double assessed_loyalty(const MemberFactors& factors, const FactorWeights& weights) {
  const double scored = loyalty_score(factors, weights);
  if (factors.loyalty_override) {
    require_unit(*factors.loyalty_override, "loyalty override of '" + factors.member_id + "'");
    return *factors.loyalty_override;
  }
  return scored;
}

double tenure_score(double months) {
  if (!std::isfinite(months) || months < 0.0) throw ValidationError("tenure months must be >= 0");
  return std::min(1.0, months / 24.0);
}

double goal_weight_loyalty(double team_weight, double self_weight) {
  if (!(team_weight >= 0.0) || !(self_weight >= 0.0) || team_weight + self_weight <= 0.0) {
    throw ValidationError("goal weights must be non-negative with a positive sum");
  }
  return team_weight / (team_weight + self_weight);
}

std::map<std::string, double> dependency_coefficients(const std::vector<DependencyRecord>& records) {
  if (records.empty()) throw ValidationError("no dependency records");
  std::map<std::string, double> owned;
  double total = 0.0;
  for (const auto& r : records) {
    require_unit(r.criticality, "criticality of '" + r.dependum + "'");
    owned[r.dependee] += r.criticality;
    total += r.criticality;
  }
  if (total <= 0.0) throw ValidationError("all dependency criticalities are zero");
  for (auto& [id, v] : owned) v /= total;
  return owned;
}

double team_cohesion(const std::map<std::string, double>& dependency_weights,
                     const std::map<std::string, double>& loyalties) {
  if (dependency_weights.size() != loyalties.size()) {
    throw ValidationError("dependency weights and loyalties cover different members");
  }
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& [id, w] : dependency_weights) {
    const auto it = loyalties.find(id);
    if (it == loyalties.end()) throw ValidationError("no loyalty for member '" + id + "'");
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("dependency weight of '" + id + "' is negative");
    require_unit(it->second, "loyalty of '" + id + "'");
    weighted += w * it->second;
    total += w;
  }
  if (total <= 0.0) throw ValidationError("dependency weights sum to zero");
  return weighted / total;
}

double effective_bargaining_power(double base, double cohesion) {
  if (!std::isfinite(base) || base < 0.0) throw ValidationError("base bargaining power must be >= 0");
  require_unit(cohesion, "cohesion");
  return base * cohesion;
}

double loyalty_gap(double target, double observed) {
  require_unit(target, "target loyalty");
  require_unit(observed, "observed loyalty");
  return target - observed;
}

bool is_intervention_candidate(double gap) { return gap > kInterventionGapThreshold; }

}  // namespace teamlab
