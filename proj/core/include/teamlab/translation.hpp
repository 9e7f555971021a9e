#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamlab/model.hpp"

namespace teamlab {

/// Named factor weights; must be non-negative and sum to one.
struct FactorWeights {
  std::vector<std::pair<std::string, double>> weights;

  void validate() const;
  bool operator==(const FactorWeights&) const = default;

  /// Tenure 0.30, social integration 0.35, role criticality 0.20, commitment 0.15.
  static FactorWeights human_default();
  /// Training alignment 0.35, architecture integration 0.30, objective overlap 0.20,
  /// interaction history 0.15.
  static FactorWeights agent_default();
};

struct MemberFactors {
  std::string member_id;
  std::vector<std::pair<std::string, double>> scores;
  std::optional<double> loyalty_override;  // assessor adjustment applied after scoring

  bool operator==(const MemberFactors&) const = default;
};

struct DependencyRecord {
  std::string dependee;
  std::string dependum;
  double criticality = 0.0;

  bool operator==(const DependencyRecord&) const = default;
};

/// Weighted sum of factor scores. Factor names must match the weights exactly.
double loyalty_score(const MemberFactors& factors, const FactorWeights& weights);

/// loyalty_override when present, otherwise loyalty_score().
double assessed_loyalty(const MemberFactors& factors, const FactorWeights& weights);

/// min(1, months / 24)
double tenure_score(double months);

/// w_team / (w_team + w_self)
double goal_weight_loyalty(double team_weight, double self_weight);

/// Share of total criticality owned by each dependee. Keys are ordered by id.
std::map<std::string, double> dependency_coefficients(const std::vector<DependencyRecord>& records);

/// Dependency-weighted mean loyalty.
double team_cohesion(const std::map<std::string, double>& dependency_weights,
                     const std::map<std::string, double>& loyalties);

double effective_bargaining_power(double base, double cohesion);

/// Gap above which a member is an intervention candidate.
inline constexpr double kInterventionGapThreshold = 0.3;

double loyalty_gap(double target, double observed);
bool is_intervention_candidate(double gap);

}  // namespace teamlab
