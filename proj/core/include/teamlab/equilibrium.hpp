#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "teamlab/model.hpp"

namespace teamlab {

/// How the fixed-point iteration applies best responses.
enum class UpdateScheme {
  /// a <- (1 - 1/n) a + (1/n) BR(a), all members simultaneously. Maps a symmetric
  /// profile straight onto the symmetric equilibrium.
  kRelaxedSimultaneous,
  /// In-place sweep in member order; later members see updated predecessors.
  kGaussSeidel,
};

struct SolverSettings {
  double tolerance = 1e-6;
  int max_iterations = 100000;
  std::optional<ActionProfile> initial_profile;  // defaults to effort_cap / 2 everywhere
  UpdateScheme scheme = UpdateScheme::kRelaxedSimultaneous;

  void validate() const;
};

struct EquilibriumResult {
  ActionProfile profile;
  std::vector<double> utilities;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // max_i |a_i - BR_i(a)|
};

/// Best response of member `member` given the sum of everyone else's effort.
using BestResponseFn = std::function<double(std::size_t member, double others_total)>;
/// Utility of `member` at a full profile.
using UtilityFn = std::function<double(std::size_t member, const ActionProfile&)>;

/// Total effort at which a member with this loyalty is exactly satisfied:
/// (omega beta (1 + phi_B theta (n-1)) / (n c (1 - phi_C theta)))^(1/(1-beta)).
double target_total_effort(const TeamConfig& config, const MechanismStrengths& mech, double loyalty);

/// Closed-form best response, clamped to [0, effort_cap].
double best_response(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                     double others_total);

/// Fixed-point iteration over an arbitrary best-response map.
EquilibriumResult solve_fixed_point(const TeamConfig& config, const BestResponseFn& best_response_of,
                                    const UtilityFn& utility_of, const SolverSettings& settings);

/// Team Production Equilibrium for the consolidated two-mechanism utility.
EquilibriumResult solve_tpe(const TeamConfig& config, const MechanismStrengths& mech,
                            const LoyaltyProfile& loyalties, const SolverSettings& settings = {});

/// Which closed form to use for the symmetric equilibrium.
enum class FormulaVariant {
  /// Derived from the first-order condition: a* = (1/n) (...)^(1/(1-beta)).
  kFirstOrderCondition,
  /// The same closed form without the leading 1/n.
  kWithoutTeamShare,
};

/// Symmetric equilibrium effort before clamping.
double symmetric_equilibrium_interior(const TeamConfig& config, const MechanismStrengths& mech,
                                      double loyalty,
                                      FormulaVariant variant = FormulaVariant::kFirstOrderCondition);

double analytic_symmetric_equilibrium(const TeamConfig& config, const MechanismStrengths& mech,
                                      double loyalty,
                                      FormulaVariant variant = FormulaVariant::kFirstOrderCondition);

/// Symmetric per-member effort maximising Q - c sum(a), before clamping.
double social_optimum_interior(const TeamConfig& config);
double social_optimum(const TeamConfig& config);

struct WelfareLoss {
  double loss = 0.0;                    // sum_i U_i(social) - U_i(equilibrium)
  double social_welfare = 0.0;          // sum_i U_i(social)
  std::optional<double> loss_fraction;  // empty when social_welfare <= 0
  EquilibriumResult equilibrium;
};

WelfareLoss welfare_loss(const TeamConfig& config, const MechanismStrengths& mech,
                         const LoyaltyProfile& loyalties, const SolverSettings& settings = {});

}  // namespace teamlab
