#include "teamlab/case_study.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "teamlab/statistics.hpp"
#include "teamlab/translation.hpp"

namespace teamlab {

namespace {

constexpr double kStabilityTolerance = 1e-4;

PhaseOutcome solve_phase(const std::string& name, const TeamConfig& config, const MechanismStrengths& mech,
                         double loyalty, int expected_rank, const SolverSettings& solver) {
  const auto profile = LoyaltyProfile::uniform(config.team_size, loyalty);
  const auto eq = solve_tpe(config, mech, profile, solver);

  PhaseOutcome out;
  out.name = name;
  out.config = config;
  out.mean_loyalty = loyalty;
  out.expected_rank = expected_rank;
  out.interior_effort = symmetric_equilibrium_interior(config, mech, loyalty);
  out.effort = eq.profile.total() / config.team_size;
  out.clamped = out.interior_effort > config.effort_cap;
  out.interior_total = out.interior_effort * config.team_size;
  out.total_effort = eq.profile.total();
  out.output = team_output(config, eq.profile);
  out.converged = eq.converged;
  out.iterations = eq.iterations;
  out.residual = eq.residual;

  out.stable_across_starts = true;
  for (double start : {0.0, config.effort_cap}) {
    SolverSettings alt = solver;
    alt.initial_profile = ActionProfile::uniform(config.team_size, start);
    const auto other = solve_tpe(config, mech, profile, alt);
    for (std::size_t i = 0; i < other.profile.efforts.size(); ++i) {
      if (std::abs(other.profile.efforts[i] - eq.profile.efforts[i]) > kStabilityTolerance) {
        out.stable_across_starts = false;
      }
    }
  }
  return out;
}

int sign(double v, double tol = 1e-12) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

double pct_change(double base, double value) {
  if (base == 0.0) return value == 0.0 ? 0.0 : std::copysign(INFINITY, value);
  return 100.0 * (value - base) / base;
}

Rubric score(const std::vector<PhaseOutcome>& phases) {
  Rubric rubric;
  const std::size_t k = phases.size();
  rubric.maximum = static_cast<int>(15 * k);
  rubric.ordering_maximum = static_cast<int>(11 * k);
  if (k == 0) return rubric;

  std::vector<double> efforts;
  for (const auto& p : phases) efforts.push_back(p.interior_effort);
  const auto predicted_rank = stats::ranks(efforts);

  const auto top = std::max_element(phases.begin(), phases.end(), [](const auto& a, const auto& b) {
                     return a.expected_rank < b.expected_rank;
                   }) - phases.begin();
  const bool have_references = std::all_of(phases.begin(), phases.end(), [](const auto& p) {
    return p.reference_effort.has_value() && *p.reference_effort > 0.0;
  });

  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = phases[i];
    PhaseScore s;
    s.convergence = (p.converged ? 1 : 0) + (p.effort >= 0.0 && p.effort <= p.config.effort_cap ? 1 : 0) +
                    (p.stable_across_starts ? 1 : 0);

    if (have_references && phases[top].interior_effort > 0.0) {
      const double predicted = p.interior_effort / phases[top].interior_effort;
      const double reference = *p.reference_effort / *phases[top].reference_effort;
      const double error = std::abs(predicted - reference) / reference;
      s.magnitude = error <= 0.25 ? 4 : (error <= 0.5 ? 2 : 0);
    }

    if (predicted_rank[i] == static_cast<double>(p.expected_rank)) s.pattern = 4;

    if (k > 1) {
      const std::size_t j = i == 0 ? 1 : i - 1;
      const int predicted = sign(phases[i].interior_effort - phases[j].interior_effort);
      const int expected = sign(static_cast<double>(phases[i].expected_rank - phases[j].expected_rank));
      if (predicted == expected) s.trend = 4;
    }
    rubric.phases.push_back(s);
    rubric.total += s.total();
    rubric.ordering_total += s.convergence + s.pattern + s.trend;
  }
  return rubric;
}

std::optional<double> phase1_cohesion(const Scenario& scenario) {
  if (scenario.dependencies.empty()) return std::nullopt;
  const auto ids = scenario.member_ids();
  const auto profile = scenario.loyalty_profile();
  std::map<std::string, double> loyalties;
  for (std::size_t i = 0; i < ids.size(); ++i) loyalties[ids[i]] = profile.values[i];
  auto weights = dependency_coefficients(scenario.dependencies);
  // Members without recorded dependencies carry zero weight.
  for (const auto& [id, _] : loyalties) weights.try_emplace(id, 0.0);
  if (weights.size() != loyalties.size()) return std::nullopt;
  return team_cohesion(weights, loyalties);
}

}  // namespace

CaseStudyReport run_case_study(const Scenario& scenario, const SolverSettings& solver) {
  if (scenario.phases.empty()) throw ValidationError("scenario '" + scenario.name + "' has no phases");
  const auto& mech = scenario.consolidated();

  CaseStudyReport report;
  report.scenario = scenario.name;
  for (const auto& phase : scenario.phases) {
    auto outcome = solve_phase(phase.name, phase.overrides.apply(scenario.config), mech, phase.mean_loyalty,
                               phase.expected_rank, solver);
    outcome.reference_effort = phase.reference_effort;
    outcome.reference_cohesion = phase.reference_cohesion;
    report.phases.push_back(std::move(outcome));
  }

  std::vector<double> per_member;
  std::vector<double> totals;
  std::vector<double> expected;
  for (const auto& p : report.phases) {
    per_member.push_back(p.interior_effort);
    totals.push_back(p.interior_total);
    expected.push_back(static_cast<double>(p.expected_rank));
  }
  report.strictly_decreasing = report.phases.size() > 1;
  for (std::size_t i = 1; i < per_member.size(); ++i) {
    if (!(per_member[i] < per_member[i - 1])) report.strictly_decreasing = false;
  }

  const auto try_corr = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const ValidationError&) {
      return std::nullopt;
    }
  };
  if (report.phases.size() >= 2) {
    report.spearman_per_member = try_corr([&] { return stats::spearman_rho(per_member, expected).r; });
    report.spearman_total = try_corr([&] { return stats::spearman_rho(totals, expected).r; });
  }
  if (report.phases.size() >= 3) {
    try {
      const auto pr = stats::pearson_r(per_member, expected);
      report.pearson_r = pr.r;
      report.pearson_p = pr.p_value;
    } catch (const ValidationError&) {
    }
  }
  report.phase1_cohesion = phase1_cohesion(scenario);
  report.rubric = score(report.phases);
  return report;
}

CounterfactualKind Counterfactual::parse_kind(const std::string& text) {
  if (text == "cf1" || text == "scale-mechanisms") return CounterfactualKind::kScaleMechanisms;
  if (text == "cf2" || text == "cap-team-size") return CounterfactualKind::kCapTeamSize;
  if (text == "cf3" || text == "shift-loyalty") return CounterfactualKind::kShiftLoyalty;
  throw ValidationError("unknown counterfactual '" + text + "' (expected cf1, cf2 or cf3)");
}

std::string to_string(CounterfactualKind kind) {
  switch (kind) {
    case CounterfactualKind::kScaleMechanisms: return "scale-mechanisms";
    case CounterfactualKind::kCapTeamSize: return "cap-team-size";
    case CounterfactualKind::kShiftLoyalty: return "shift-loyalty";
  }
  return "unknown";
}

CounterfactualReport run_counterfactual(const Scenario& scenario, const Counterfactual& modifier,
                                        const SolverSettings& solver) {
  if (scenario.phases.empty()) throw ValidationError("scenario '" + scenario.name + "' has no phases");
  const auto& mech = scenario.consolidated();
  if (modifier.phase && *modifier.phase >= scenario.phases.size()) {
    throw ValidationError("counterfactual phase index out of range");
  }
  switch (modifier.kind) {
    case CounterfactualKind::kScaleMechanisms:
      if (!(modifier.magnitude >= 0.0 && modifier.magnitude <= 1.0)) {
        throw ValidationError("mechanism reduction must lie in [0, 1]");
      }
      break;
    case CounterfactualKind::kCapTeamSize:
      if (!(modifier.magnitude >= 2.0) || modifier.magnitude != std::floor(modifier.magnitude)) {
        throw ValidationError("team size cap must be an integer >= 2");
      }
      break;
    case CounterfactualKind::kShiftLoyalty:
      if (!(modifier.magnitude >= 0.0 && modifier.magnitude <= 1.0)) {
        throw ValidationError("loyalty shift must lie in [0, 1]");
      }
      break;
  }

  CounterfactualReport report;
  report.scenario = scenario.name;
  report.modifier = modifier;
  switch (modifier.kind) {
    case CounterfactualKind::kScaleMechanisms:
      report.expectation = "weaker mechanisms lower per-member effort";
      break;
    case CounterfactualKind::kCapTeamSize:
      report.expectation = "a smaller team raises per-member effort and lowers realised output";
      break;
    case CounterfactualKind::kShiftLoyalty:
      report.expectation = "higher loyalty raises per-member effort";
      break;
  }

  report.identical = true;
  report.expectation_met = true;
  for (std::size_t i = 0; i < scenario.phases.size(); ++i) {
    const auto& phase = scenario.phases[i];
    const TeamConfig base_config = phase.overrides.apply(scenario.config);
    TeamConfig cf_config = base_config;
    MechanismStrengths cf_mech = mech;
    double cf_loyalty = phase.mean_loyalty;
    const bool targeted = !modifier.phase || *modifier.phase == i;
    if (targeted) {
      switch (modifier.kind) {
        case CounterfactualKind::kScaleMechanisms:
          cf_mech.loyalty_benefit *= 1.0 - modifier.magnitude;
          cf_mech.cost_tolerance *= 1.0 - modifier.magnitude;
          break;
        case CounterfactualKind::kCapTeamSize:
          cf_config.team_size = std::min(cf_config.team_size, static_cast<int>(modifier.magnitude));
          break;
        case CounterfactualKind::kShiftLoyalty:
          cf_loyalty = std::min(1.0, cf_loyalty + modifier.magnitude);
          break;
      }
    }

    PhaseComparison cmp;
    cmp.name = phase.name;
    cmp.modified = !(cf_config == base_config) || !(cf_mech == mech) || cf_loyalty != phase.mean_loyalty;
    cmp.baseline = solve_phase(phase.name, base_config, mech, phase.mean_loyalty, phase.expected_rank, solver);
    cmp.counterfactual = solve_phase(phase.name, cf_config, cf_mech, cf_loyalty, phase.expected_rank, solver);
    cmp.interior_effort_change_pct = pct_change(cmp.baseline.interior_effort, cmp.counterfactual.interior_effort);
    cmp.effort_change_pct = pct_change(cmp.baseline.effort, cmp.counterfactual.effort);
    cmp.output_change_pct = pct_change(cmp.baseline.output, cmp.counterfactual.output);

    if (cmp.modified) {
      report.identical = false;
      const double before = cmp.baseline.interior_effort;
      const double after = cmp.counterfactual.interior_effort;
      bool met = true;
      switch (modifier.kind) {
        case CounterfactualKind::kScaleMechanisms: met = after < before; break;
        case CounterfactualKind::kCapTeamSize:
          met = after > before && cmp.counterfactual.output < cmp.baseline.output;
          break;
        case CounterfactualKind::kShiftLoyalty: met = after > before; break;
      }
      report.expectation_met = report.expectation_met && met;
    }
    report.phases.push_back(std::move(cmp));
  }
  return report;
}

}  // namespace teamlab
