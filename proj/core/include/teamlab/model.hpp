#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace teamlab {

/// Thrown when a parameter or input violates a model invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Production environment shared by every member of the team.
struct TeamConfig {
  double productivity = 20.0;     // omega
  double returns_exponent = 0.5;  // beta, in (0, 1)
  double effort_cost = 2.5;       // c
  int team_size = 5;              // n >= 2
  double effort_cap = 10.0;       // a-bar

  void validate() const;
  bool operator==(const TeamConfig&) const = default;
};

/// Loyalty benefit (phi_B) and cost tolerance (phi_C).
struct MechanismStrengths {
  double loyalty_benefit = 0.80;
  double cost_tolerance = 0.30;

  void validate() const;
  bool operator==(const MechanismStrengths&) const = default;
};

/// Per-member loyalty coefficients, each in [0, 1].
struct LoyaltyProfile {
  std::vector<double> values;

  static LoyaltyProfile uniform(int team_size, double loyalty);
  void validate(const TeamConfig& config) const;
  bool operator==(const LoyaltyProfile&) const = default;
};

/// Per-member effort levels.
struct ActionProfile {
  std::vector<double> efforts;

  static ActionProfile uniform(int team_size, double effort);
  double total() const;
  void validate(const TeamConfig& config) const;
  bool operator==(const ActionProfile&) const = default;
};

void validate_loyalty(double loyalty);

// Model primitives. All functions validate their inputs and throw
// ValidationError on dimension mismatch or out-of-range values.

double team_output(const TeamConfig& config, const ActionProfile& actions);

/// Output as a function of aggregate effort.
double output_of_total(const TeamConfig& config, double total_effort);

double base_payoff(const TeamConfig& config, const ActionProfile& actions, std::size_t member);

/// Aggregate material payoff of everyone except `member`.
double teammates_payoff(const TeamConfig& config, const ActionProfile& actions,
                        std::size_t member);

double loyalty_modifier(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member);

/// Base payoff plus loyalty modifier.
double utility(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
               const ActionProfile& actions, std::size_t member);

/// Rearranged form (1/n)Q - c(1 - phi_C theta) a_i + phi_B theta pi_{-i}. Algebraically
/// identical to utility(); kept separate so the identity can be checked.
double utility_expanded(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member);

/// d U_i / d a_i. Throws ValidationError when total effort is zero (the derivative is
/// unbounded there for beta < 1).
double marginal_utility(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member);

/// 1 + phi_B theta (n - 1)
double benefit_multiplier(const MechanismStrengths& mech, double loyalty, int team_size);

/// 1 - phi_C theta
double cost_multiplier(const MechanismStrengths& mech, double loyalty);

}  // namespace teamlab
