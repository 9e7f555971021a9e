#include "teamlab/extended.hpp"

#include <algorithm>
#include <cmath>

#include "teamlab/golden_section.hpp"

namespace teamlab {

void ExtendedStrengths::validate() const {
  for (double v : {internalization, warm_glow, cost_tolerance, guilt}) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("extended mechanism strengths must be >= 0");
  }
  if (cost_tolerance >= 1.0) throw ValidationError("cost_tolerance must be < 1");
}

std::vector<std::string> ExtendedStrengths::range_warnings() const {
  std::vector<std::string> out;
  const auto check = [&](const char* name, double v, double lo, double hi) {
    if (v < lo || v > hi) {
      out.push_back(std::string(name) + " = " + std::to_string(v) + " outside recommended [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  };
  check("internalization", internalization, 0.4, 0.8);
  check("warm_glow", warm_glow, 0.1, 0.4);
  check("guilt", guilt, 0.05, 0.25);
  return out;
}

double extended_utility(const TeamConfig& config, const ExtendedStrengths& ext, double loyalty,
                        const ActionProfile& actions, std::size_t member) {
  ext.validate();
  validate_loyalty(loyalty);
  const double q = team_output(config, actions);
  const double a = actions.efforts.at(member);
  const double shortfall = std::max(0.0, config.effort_cap - a);
  return q / config.team_size - config.effort_cost * (1.0 - ext.cost_tolerance * loyalty) * a +
         ext.internalization * loyalty * teammates_payoff(config, actions, member) +
         ext.warm_glow * loyalty * a - ext.guilt * loyalty * shortfall * shortfall;
}

namespace {

// Own-effort dependent part of extended_utility with others' total held fixed.
double own_effort_objective(const TeamConfig& config, const ExtendedStrengths& ext, double loyalty,
                            double others_total, double a) {
  const double n = config.team_size;
  const double q = output_of_total(config, a + others_total);
  const double shortfall = std::max(0.0, config.effort_cap - a);
  return (1.0 + ext.internalization * loyalty * (n - 1.0)) * q / n -
         config.effort_cost * (1.0 - ext.cost_tolerance * loyalty) * a + ext.warm_glow * loyalty * a -
         ext.guilt * loyalty * shortfall * shortfall;
}

}  // namespace

double extended_best_response(const TeamConfig& config, const ExtendedStrengths& ext, double loyalty,
                              double others_total) {
  config.validate();
  ext.validate();
  validate_loyalty(loyalty);
  if (!(others_total >= 0.0)) throw ValidationError("others_total must be >= 0");
  const auto f = [&](double a) { return own_effort_objective(config, ext, loyalty, others_total, a); };
  return golden_section_maximize(f, 0.0, config.effort_cap, 1e-8).argmax;
}

EquilibriumResult solve_extended(const TeamConfig& config, const ExtendedStrengths& ext,
                                 const LoyaltyProfile& loyalties, const SolverSettings& settings) {
  config.validate();
  ext.validate();
  loyalties.validate(config);
  const BestResponseFn br = [&](std::size_t i, double others_total) {
    return extended_best_response(config, ext, loyalties.values[i], others_total);
  };
  const UtilityFn u = [&](std::size_t i, const ActionProfile& a) {
    return extended_utility(config, ext, loyalties.values[i], a, i);
  };
  return solve_fixed_point(config, br, u, settings);
}

}  // namespace teamlab
