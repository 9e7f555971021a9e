#include "teamlab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace teamlab {

void SolverSettings::validate() const {
  if (!(tolerance > 0.0)) throw ValidationError("solver tolerance must be > 0");
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
}

double target_total_effort(const TeamConfig& config, const MechanismStrengths& mech, double loyalty) {
  config.validate();
  mech.validate();
  validate_loyalty(loyalty);
  const double n = config.team_size;
  const double ratio = config.productivity * config.returns_exponent *
                       benefit_multiplier(mech, loyalty, config.team_size) /
                       (n * config.effort_cost * cost_multiplier(mech, loyalty));
  return std::pow(ratio, 1.0 / (1.0 - config.returns_exponent));
}

double best_response(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                     double others_total) {
  if (!(others_total >= 0.0)) throw ValidationError("others_total must be >= 0");
  const double unclamped = target_total_effort(config, mech, loyalty) - others_total;
  return std::clamp(unclamped, 0.0, config.effort_cap);
}

namespace {

double residual_of(const ActionProfile& profile, const BestResponseFn& best_response_of) {
  const double total = profile.total();
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.efforts.size(); ++i) {
    const double others = std::max(0.0, total - profile.efforts[i]);
    worst = std::max(worst, std::abs(profile.efforts[i] - best_response_of(i, others)));
  }
  return worst;
}

// The relaxed update only approaches a binding bound geometrically. Once converged, move
// efforts within tolerance of a bound their best response sits on onto the bound itself,
// unless that would push the residual past tolerance.
void snap_to_bounds(ActionProfile& profile, const TeamConfig& config, const BestResponseFn& best_response_of,
                    double tolerance, double& residual) {
  ActionProfile snapped = profile;
  const double total = profile.total();
  bool changed = false;
  for (std::size_t i = 0; i < snapped.efforts.size(); ++i) {
    const double a = profile.efforts[i];
    const double br = best_response_of(i, std::max(0.0, total - a));
    for (double bound : {0.0, config.effort_cap}) {
      if (br == bound && a != bound && std::abs(a - bound) <= tolerance) {
        snapped.efforts[i] = bound;
        changed = true;
      }
    }
  }
  if (!changed) return;
  const double r = residual_of(snapped, best_response_of);
  if (r <= tolerance) {
    profile = std::move(snapped);
    residual = r;
  }
}

}  // namespace

EquilibriumResult solve_fixed_point(const TeamConfig& config, const BestResponseFn& best_response_of,
                                    const UtilityFn& utility_of, const SolverSettings& settings) {
  config.validate();
  settings.validate();
  const auto n = static_cast<std::size_t>(config.team_size);

  ActionProfile current = settings.initial_profile.value_or(
      ActionProfile::uniform(config.team_size, config.effort_cap / 2.0));
  current.validate(config);

  const double step = 1.0 / static_cast<double>(n);
  EquilibriumResult result;
  std::vector<double> next(n);

  for (int k = 1; k <= settings.max_iterations; ++k) {
    double delta = 0.0;
    if (settings.scheme == UpdateScheme::kGaussSeidel) {
      double total = current.total();
      for (std::size_t i = 0; i < n; ++i) {
        const double old = current.efforts[i];
        const double updated = best_response_of(i, std::max(0.0, total - old));
        current.efforts[i] = updated;
        total += updated - old;
        delta = std::max(delta, std::abs(updated - old));
      }
    } else {
      const double total = current.total();
      for (std::size_t i = 0; i < n; ++i) {
        const double old = current.efforts[i];
        const double br = best_response_of(i, std::max(0.0, total - old));
        next[i] = std::clamp((1.0 - step) * old + step * br, 0.0, config.effort_cap);
        delta = std::max(delta, std::abs(next[i] - old));
      }
      current.efforts = next;
    }
    result.iterations = k;
    if (delta < settings.tolerance) {
      result.residual = residual_of(current, best_response_of);
      if (result.residual <= settings.tolerance) {
        result.converged = true;
        snap_to_bounds(current, config, best_response_of, settings.tolerance, result.residual);
        break;
      }
    }
  }
  if (!result.converged) result.residual = residual_of(current, best_response_of);

  result.profile = std::move(current);
  result.utilities.reserve(n);
  for (std::size_t i = 0; i < n; ++i) result.utilities.push_back(utility_of(i, result.profile));
  return result;
}

EquilibriumResult solve_tpe(const TeamConfig& config, const MechanismStrengths& mech,
                            const LoyaltyProfile& loyalties, const SolverSettings& settings) {
  config.validate();
  mech.validate();
  loyalties.validate(config);

  // Targets depend only on loyalty, so compute them once.
  std::vector<double> targets;
  targets.reserve(loyalties.values.size());
  for (double theta : loyalties.values) targets.push_back(target_total_effort(config, mech, theta));

  const BestResponseFn br = [&](std::size_t i, double others_total) {
    return std::clamp(targets[i] - others_total, 0.0, config.effort_cap);
  };
  const UtilityFn u = [&](std::size_t i, const ActionProfile& a) {
    return utility(config, mech, loyalties.values[i], a, i);
  };
  return solve_fixed_point(config, br, u, settings);
}

double symmetric_equilibrium_interior(const TeamConfig& config, const MechanismStrengths& mech,
                                      double loyalty, FormulaVariant variant) {
  const double total = target_total_effort(config, mech, loyalty);
  return variant == FormulaVariant::kFirstOrderCondition ? total / config.team_size : total;
}

double analytic_symmetric_equilibrium(const TeamConfig& config, const MechanismStrengths& mech,
                                      double loyalty, FormulaVariant variant) {
  return std::clamp(symmetric_equilibrium_interior(config, mech, loyalty, variant), 0.0,
                    config.effort_cap);
}

double social_optimum_interior(const TeamConfig& config) {
  config.validate();
  const double beta = config.returns_exponent;
  return std::pow(config.productivity * beta / config.effort_cost, 1.0 / (1.0 - beta)) /
         config.team_size;
}

double social_optimum(const TeamConfig& config) {
  return std::clamp(social_optimum_interior(config), 0.0, config.effort_cap);
}

WelfareLoss welfare_loss(const TeamConfig& config, const MechanismStrengths& mech,
                         const LoyaltyProfile& loyalties, const SolverSettings& settings) {
  WelfareLoss out;
  out.equilibrium = solve_tpe(config, mech, loyalties, settings);
  const ActionProfile social = ActionProfile::uniform(config.team_size, social_optimum(config));
  double equilibrium_welfare = 0.0;
  for (std::size_t i = 0; i < loyalties.values.size(); ++i) {
    out.social_welfare += utility(config, mech, loyalties.values[i], social, i);
    equilibrium_welfare += out.equilibrium.utilities[i];
  }
  out.loss = out.social_welfare - equilibrium_welfare;
  if (out.social_welfare > 0.0) out.loss_fraction = out.loss / out.social_welfare;
  return out;
}

}  // namespace teamlab
