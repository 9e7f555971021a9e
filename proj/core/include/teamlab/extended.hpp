#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "teamlab/equilibrium.hpp"
#include "teamlab/model.hpp"

namespace teamlab {

/// Four-mechanism decomposition: welfare internalisation, warm glow, cost tolerance and
/// quadratic guilt for falling short of the effort cap.
struct ExtendedStrengths {
  double internalization = 0.6;
  double warm_glow = 0.2;
  double cost_tolerance = 0.3;
  double guilt = 0.1;

  void validate() const;
  /// Human-readable notes for values outside the recommended ranges. Not errors.
  std::vector<std::string> range_warnings() const;
  bool operator==(const ExtendedStrengths&) const = default;
};

double extended_utility(const TeamConfig& config, const ExtendedStrengths& ext, double loyalty,
                        const ActionProfile& actions, std::size_t member);

/// Numeric argmax of extended_utility over [0, effort_cap].
double extended_best_response(const TeamConfig& config, const ExtendedStrengths& ext, double loyalty,
                              double others_total);

/// Fixed-point iteration with extended_best_response plugged into the generic solver.
EquilibriumResult solve_extended(const TeamConfig& config, const ExtendedStrengths& ext,
                                 const LoyaltyProfile& loyalties, const SolverSettings& settings = {});

}  // namespace teamlab
