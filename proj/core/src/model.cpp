#include "teamlab/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace teamlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

void check_member(const TeamConfig& config, std::size_t member) {
  if (member >= static_cast<std::size_t>(config.team_size)) {
    throw ValidationError("member index " + std::to_string(member) + " out of range for team of " +
                          std::to_string(config.team_size));
  }
}

void check_actions(const TeamConfig& config, const ActionProfile& actions) {
  config.validate();
  if (actions.efforts.size() != static_cast<std::size_t>(config.team_size)) {
    throw ValidationError("action profile has " + std::to_string(actions.efforts.size()) +
                          " entries, team size is " + std::to_string(config.team_size));
  }
  for (double a : actions.efforts) {
    if (!(std::isfinite(a) && a >= 0.0 && a <= config.effort_cap)) {
      throw ValidationError("effort must lie in [0, effort_cap]");
    }
  }
}

}  // namespace

void TeamConfig::validate() const {
  require(std::isfinite(productivity) && productivity > 0.0, "productivity must be > 0");
  require(std::isfinite(returns_exponent) && returns_exponent > 0.0 && returns_exponent < 1.0,
          "returns_exponent must lie in (0, 1)");
  require(std::isfinite(effort_cost) && effort_cost > 0.0, "effort_cost must be > 0");
  require(team_size >= 2, "team_size must be >= 2");
  require(std::isfinite(effort_cap) && effort_cap > 0.0, "effort_cap must be > 0");
}

void MechanismStrengths::validate() const {
  require(std::isfinite(loyalty_benefit) && loyalty_benefit >= 0.0, "loyalty_benefit must be >= 0");
  require(std::isfinite(cost_tolerance) && cost_tolerance >= 0.0 && cost_tolerance < 1.0,
          "cost_tolerance must lie in [0, 1)");
}

void validate_loyalty(double loyalty) {
  require(std::isfinite(loyalty) && loyalty >= 0.0 && loyalty <= 1.0, "loyalty must lie in [0, 1]");
}

LoyaltyProfile LoyaltyProfile::uniform(int team_size, double loyalty) {
  return LoyaltyProfile{std::vector<double>(static_cast<std::size_t>(team_size), loyalty)};
}

void LoyaltyProfile::validate(const TeamConfig& config) const {
  if (values.size() != static_cast<std::size_t>(config.team_size)) {
    throw ValidationError("loyalty profile has " + std::to_string(values.size()) +
                          " entries, team size is " + std::to_string(config.team_size));
  }
  for (double v : values) validate_loyalty(v);
}

ActionProfile ActionProfile::uniform(int team_size, double effort) {
  return ActionProfile{std::vector<double>(static_cast<std::size_t>(team_size), effort)};
}

double ActionProfile::total() const { return std::accumulate(efforts.begin(), efforts.end(), 0.0); }

void ActionProfile::validate(const TeamConfig& config) const { check_actions(config, *this); }

double output_of_total(const TeamConfig& config, double total_effort) {
  if (total_effort <= 0.0) return 0.0;
  return config.productivity * std::pow(total_effort, config.returns_exponent);
}

double team_output(const TeamConfig& config, const ActionProfile& actions) {
  check_actions(config, actions);
  return output_of_total(config, actions.total());
}

double base_payoff(const TeamConfig& config, const ActionProfile& actions, std::size_t member) {
  check_actions(config, actions);
  check_member(config, member);
  return team_output(config, actions) / config.team_size - config.effort_cost * actions.efforts[member];
}

double teammates_payoff(const TeamConfig& config, const ActionProfile& actions, std::size_t member) {
  check_actions(config, actions);
  check_member(config, member);
  const double n = config.team_size;
  const double others = actions.total() - actions.efforts[member];
  return (n - 1.0) / n * team_output(config, actions) - config.effort_cost * others;
}

double loyalty_modifier(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member) {
  mech.validate();
  validate_loyalty(loyalty);
  return loyalty * (mech.loyalty_benefit * teammates_payoff(config, actions, member) +
                    mech.cost_tolerance * config.effort_cost * actions.efforts[member]);
}

double utility(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
               const ActionProfile& actions, std::size_t member) {
  return base_payoff(config, actions, member) + loyalty_modifier(config, mech, loyalty, actions, member);
}

double utility_expanded(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member) {
  mech.validate();
  validate_loyalty(loyalty);
  check_actions(config, actions);
  check_member(config, member);
  const double q = team_output(config, actions);
  return q / config.team_size -
         config.effort_cost * cost_multiplier(mech, loyalty) * actions.efforts[member] +
         mech.loyalty_benefit * loyalty * teammates_payoff(config, actions, member);
}

double benefit_multiplier(const MechanismStrengths& mech, double loyalty, int team_size) {
  return 1.0 + mech.loyalty_benefit * loyalty * (team_size - 1);
}

double cost_multiplier(const MechanismStrengths& mech, double loyalty) {
  return 1.0 - mech.cost_tolerance * loyalty;
}

double marginal_utility(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const ActionProfile& actions, std::size_t member) {
  mech.validate();
  validate_loyalty(loyalty);
  check_actions(config, actions);
  check_member(config, member);
  const double total = actions.total();
  if (!(total > 0.0)) throw ValidationError("marginal utility is singular at zero total effort");
  const double n = config.team_size;
  const double beta = config.returns_exponent;
  return config.productivity * beta / n * std::pow(total, beta - 1.0) *
             benefit_multiplier(mech, loyalty, config.team_size) -
         config.effort_cost * cost_multiplier(mech, loyalty);
}

}  // namespace teamlab
