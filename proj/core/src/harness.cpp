#include "teamlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "teamlab/parallel.hpp"
#include "teamlab/random.hpp"

namespace teamlab {

void GridSpec::validate() const {
  if (productivity.empty() || returns_exponent.empty() || effort_cost.empty() || team_size.empty() ||
      loyalty.empty()) {
    throw ValidationError("grid parameter lists must be non-empty");
  }
  mech.validate();
  for (double w : productivity)
    for (double b : returns_exponent)
      for (double c : effort_cost)
        for (int n : team_size) TeamConfig{w, b, c, n, effort_cap}.validate();
  for (double t : loyalty) validate_loyalty(t);
  default_point.validate();
}

std::size_t GridSpec::combination_count() const {
  return productivity.size() * returns_exponent.size() * effort_cost.size() * team_size.size();
}

std::size_t GridSpec::size() const { return combination_count() * loyalty.size(); }

std::vector<GridPoint> generate_grid(const GridSpec& spec) {
  spec.validate();
  std::vector<GridPoint> out;
  out.reserve(spec.size());
  std::size_t combination = 0;
  for (double w : spec.productivity) {
    for (double b : spec.returns_exponent) {
      for (double c : spec.effort_cost) {
        for (int n : spec.team_size) {
          for (double t : spec.loyalty) {
            out.push_back(GridPoint{out.size(), combination, TeamConfig{w, b, c, n, spec.effort_cap}, t});
          }
          ++combination;
        }
      }
    }
  }
  return out;
}

namespace {

double symmetric_effort(const TeamConfig& config, const MechanismStrengths& mech, double loyalty,
                        const SolverSettings& solver) {
  const auto eq = solve_tpe(config, mech, LoyaltyProfile::uniform(config.team_size, loyalty), solver);
  return eq.profile.total() / config.team_size;
}

double fraction(std::size_t passed, std::size_t applicable) {
  return applicable == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(applicable);
}

}  // namespace

std::optional<double> synergy_ratio(double baseline, double benefit_only, double cost_only, double combined) {
  const double denominator = (benefit_only - baseline) + (cost_only - baseline);
  if (!(denominator > 0.0)) return std::nullopt;
  return (combined - baseline) / denominator;
}

SynergyResult synergy_analysis(const TeamConfig& config, double loyalty, const MechanismStrengths& mech,
                               const SolverSettings& solver) {
  validate_loyalty(loyalty);
  if (!(loyalty > 0.0)) throw ValidationError("synergy analysis needs loyalty > 0");
  mech.validate();
  SynergyResult r;
  r.baseline = symmetric_effort(config, MechanismStrengths{0.0, 0.0}, loyalty, solver);
  r.benefit_only = symmetric_effort(config, MechanismStrengths{mech.loyalty_benefit, 0.0}, loyalty, solver);
  r.cost_only = symmetric_effort(config, MechanismStrengths{0.0, mech.cost_tolerance}, loyalty, solver);
  r.combined = symmetric_effort(config, mech, loyalty, solver);
  r.ratio = synergy_ratio(r.baseline, r.benefit_only, r.cost_only, r.combined);
  return r;
}

Differentiation effort_differentiation(const TeamConfig& config, const MechanismStrengths& mech,
                                       double high_loyalty, double low_loyalty, const SolverSettings& solver) {
  Differentiation d;
  d.high = symmetric_effort(config, mech, high_loyalty, solver);
  d.low = symmetric_effort(config, mech, low_loyalty, solver);
  if (d.low > 0.0) {
    d.ratio = d.high / d.low;
  } else if (d.high > 0.0) {
    d.ratio = std::numeric_limits<double>::infinity();
    d.infinite = true;
  } else {
    d.ratio = 1.0;
  }
  return d;
}

bool increasing_with_cap_ties(const std::vector<double>& values, double cap, double tol) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool tie_at_cap = values[i - 1] >= cap - tol && values[i] >= cap - tol;
    if (!(values[i] > values[i - 1]) && !tie_at_cap) return false;
  }
  return true;
}

bool decreasing_with_cap_ties(const std::vector<double>& values, double cap, double tol) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool tie_at_cap = values[i - 1] >= cap - tol && values[i] >= cap - tol;
    if (!(values[i] < values[i - 1]) && !tie_at_cap) return false;
  }
  return true;
}

CombinationResult solve_combination(const TeamConfig& config, const GridSpec& spec,
                                    const SolverSettings& solver) {
  CombinationResult out;
  out.rows.reserve(spec.loyalty.size());
  for (double theta : spec.loyalty) {
    const auto eq = solve_tpe(config, spec.mech, LoyaltyProfile::uniform(config.team_size, theta), solver);
    RowSolution row;
    row.effort = eq.profile.total() / config.team_size;
    row.interior_effort = symmetric_equilibrium_interior(config, spec.mech, theta);
    row.output = team_output(config, eq.profile);
    row.utility = eq.utilities.front();
    row.converged = eq.converged;
    row.iterations = eq.iterations;
    row.min_effort = *std::min_element(eq.profile.efforts.begin(), eq.profile.efforts.end());
    row.max_effort = *std::max_element(eq.profile.efforts.begin(), eq.profile.efforts.end());
    if (theta > 0.0) row.synergy = synergy_analysis(config, theta, spec.mech, solver).ratio;
    out.rows.push_back(row);
  }
  out.baseline_solver = symmetric_effort(config, spec.mech, 0.0, solver);
  out.baseline_analytic = analytic_symmetric_equilibrium(config, spec.mech, 0.0);
  out.effort_low = symmetric_effort(config, spec.mech, kLowLoyalty, solver);
  out.effort_high = symmetric_effort(config, spec.mech, kHighLoyalty, solver);
  return out;
}

TargetReport evaluate_targets(const GridSpec& spec, const std::vector<CombinationResult>& combinations) {
  const auto grid = generate_grid(spec);
  if (combinations.size() != spec.combination_count()) {
    throw ValidationError("expected " + std::to_string(spec.combination_count()) + " combination results, got " +
                          std::to_string(combinations.size()));
  }
  for (const auto& c : combinations) {
    if (!c.baseline_solver || !c.baseline_analytic || !c.effort_low || !c.effort_high ||
        c.rows.size() != spec.loyalty.size()) {
      throw ValidationError("combination result is missing auxiliary solutions");
    }
  }

  const double cap = spec.effort_cap;
  const std::size_t levels = spec.loyalty.size();
  const std::size_t sizes = spec.team_size.size();

  // Team-size effect: groups share (omega, beta, c, theta) and vary n in ascending order.
  std::vector<std::size_t> size_order(sizes);
  for (std::size_t i = 0; i < sizes; ++i) size_order[i] = i;
  std::sort(size_order.begin(), size_order.end(),
            [&](std::size_t a, std::size_t b) { return spec.team_size[a] < spec.team_size[b]; });
  std::map<std::pair<std::size_t, std::size_t>, bool> size_effect;  // (combination / sizes, level)
  for (std::size_t base = 0; base < combinations.size(); base += sizes) {
    for (std::size_t level = 0; level < levels; ++level) {
      if (!(spec.loyalty[level] < kLowLoyaltyCutoff)) continue;
      std::vector<double> efforts;
      for (std::size_t k : size_order) efforts.push_back(combinations[base + k].rows[level].effort);
      size_effect[{base / sizes, level}] = decreasing_with_cap_ties(efforts, cap);
    }
  }

  TargetReport report;
  report.targets = {{
      {"free_riding_baseline", "|solver - analytic| / analytic < 5% at loyalty 0", 0, 0, 0.0, 0.965},
      {"loyalty_monotonicity", "effort strictly increasing in loyalty (ties only at the cap)", 0, 0, 0.0, 1.0},
      {"effort_differentiation", "a*(0.9) / a*(0.1) > 2.0", 0, 0, 0.0, 1.0},
      {"team_size_effect", "effort decreasing in n at loyalty < 0.3 (ties only at the cap)", 0, 0, 0.0, 1.0},
      {"mechanism_synergy", "synergy ratio > 1.1 at the row's loyalty (loyalty > 0)", 0, 0, 0.0, 0.995},
      {"bounded_outcomes", "all equilibrium efforts within [0, effort_cap]", 0, 0, 0.0, 1.0},
  }};
  report.detail.resize(grid.size());

  for (const auto& point : grid) {
    const auto& combo = combinations[point.combination];
    const std::size_t level = point.index % levels;
    const auto& row = combo.rows[level];
    auto& d = report.detail[point.index];

    d[kFreeRidingBaseline] =
        std::abs(*combo.baseline_solver - *combo.baseline_analytic) / *combo.baseline_analytic < kFreeRidingTolerance;

    std::vector<double> efforts;
    for (const auto& r : combo.rows) efforts.push_back(r.effort);
    d[kLoyaltyMonotonicity] = increasing_with_cap_ties(efforts, cap);

    d[kEffortDifferentiation] = *combo.effort_low > 0.0
                                    ? *combo.effort_high / *combo.effort_low > kDifferentiationThreshold
                                    : *combo.effort_high > 0.0;

    if (const auto it = size_effect.find({point.combination / sizes, level}); it != size_effect.end()) {
      d[kTeamSizeEffect] = it->second;
    }
    if (point.loyalty > 0.0) d[kMechanismSynergy] = row.synergy.has_value() && *row.synergy > kSynergyThreshold;
    d[kBoundedOutcomes] = row.min_effort >= 0.0 && row.max_effort <= cap;

    for (std::size_t t = 0; t < kTargetCount; ++t) {
      if (!d[t]) continue;
      ++report.targets[t].applicable;
      if (*d[t]) ++report.targets[t].passed;
    }
  }
  for (auto& t : report.targets) t.fraction = fraction(t.passed, t.applicable);
  return report;
}

SweepResult run_sweep(const GridSpec& spec, const SweepOptions& options) {
  SweepResult out;
  out.spec = spec;
  const auto grid = generate_grid(spec);
  const std::size_t levels = spec.loyalty.size();

  out.combinations.resize(spec.combination_count());
  parallel_for(out.combinations.size(), options.workers, [&](std::size_t c) {
    out.combinations[c] = solve_combination(grid[c * levels].config, spec, options.solver);
  });

  out.rows.reserve(grid.size());
  for (const auto& point : grid) {
    out.rows.push_back(SweepRow{point, out.combinations[point.combination].rows[point.index % levels]});
  }
  out.targets = evaluate_targets(spec, out.combinations);

  auto& agg = out.aggregates;
  std::vector<double> ratios;
  std::vector<double> high;
  std::vector<double> low;
  for (const auto& c : out.combinations) {
    high.push_back(*c.effort_high);
    low.push_back(*c.effort_low);
    if (*c.effort_low > 0.0) ratios.push_back(*c.effort_high / *c.effort_low);
  }
  if (!ratios.empty()) {
    agg.median_differentiation = stats::median(ratios);
    agg.mean_differentiation = stats::mean(ratios);
  }
  std::vector<double> synergies;
  std::vector<double> efforts;
  for (const auto& r : out.rows) {
    if (r.solution.synergy) synergies.push_back(*r.solution.synergy);
    efforts.push_back(r.solution.effort);
  }
  if (!synergies.empty()) agg.median_synergy = stats::median(synergies);
  if (high.size() >= 2) {
    agg.paired_t = stats::paired_t_test(high, low);
    agg.cohens_d = stats::cohens_d(high, low);
  }
  agg.effort_bootstrap = stats::bootstrap_mean_ci(efforts, options.bootstrap_resamples, 0.95, options.seed);

  agg.references = {
      {"median_effort_differentiation", agg.median_differentiation, 15.04},
      {"median_synergy_ratio", agg.median_synergy.value_or(std::nan("")), 1.57},
      {"paired_t_statistic", agg.paired_t.statistic, 17.86},
      {"cohens_d", agg.cohens_d, 0.71},
  };
  for (const auto& t : out.targets.targets) {
    agg.references.push_back({t.name + "_fraction", t.fraction, t.reference});
  }
  return out;
}

RobustnessReport monte_carlo_robustness(const GridSpec& spec, double noise_fraction, std::size_t trials,
                                        std::uint64_t seed, unsigned workers, const SolverSettings& solver) {
  spec.validate();
  if (!(noise_fraction >= 0.0 && noise_fraction < 1.0)) throw ValidationError("noise_fraction must lie in [0, 1)");
  if (trials < 1) throw ValidationError("trials must be >= 1");

  RobustnessReport report;
  report.trials = trials;
  report.noise_fraction = noise_fraction;
  report.seed = seed;
  report.trial_records.resize(trials);

  parallel_for(trials, workers, [&](std::size_t i) {
    auto rng = make_stream(seed, i);
    std::uniform_real_distribution<double> factor(1.0 - noise_fraction, 1.0 + noise_fraction);
    const auto draw = [&] { return noise_fraction > 0.0 ? factor(rng) : 1.0; };

    RobustnessTrial trial;
    trial.trial = i;
    trial.config = spec.default_point;
    trial.config.productivity *= draw();
    trial.config.returns_exponent = std::clamp(trial.config.returns_exponent * draw(), 0.01, 0.99);
    trial.config.effort_cost *= draw();
    trial.mech.loyalty_benefit = spec.mech.loyalty_benefit * draw();
    trial.mech.cost_tolerance = std::clamp(spec.mech.cost_tolerance * draw(), 0.0, 0.99);
    trial.low_loyalty = std::clamp(kLowLoyalty * draw(), 0.0, 1.0);
    trial.high_loyalty = std::clamp(kHighLoyalty * draw(), 0.0, 1.0);

    std::vector<double> efforts;
    for (double theta : spec.loyalty) efforts.push_back(symmetric_effort(trial.config, trial.mech, theta, solver));
    trial.monotonic = increasing_with_cap_ties(efforts, trial.config.effort_cap);
    trial.differentiation =
        effort_differentiation(trial.config, trial.mech, trial.high_loyalty, trial.low_loyalty, solver);
    report.trial_records[i] = trial;
  });

  std::size_t monotonic = 0;
  std::size_t above = 0;
  std::vector<double> finite;
  for (const auto& t : report.trial_records) {
    if (t.monotonic) ++monotonic;
    if (t.differentiation.ratio > kDifferentiationThreshold) ++above;
    if (!t.differentiation.infinite) finite.push_back(t.differentiation.ratio);
  }
  report.monotonic_fraction = fraction(monotonic, trials);
  report.differentiation_above_threshold_fraction = fraction(above, trials);
  if (!finite.empty()) report.differentiation_mean = stats::mean(finite);
  if (finite.size() >= 2) report.differentiation_sd = stats::sample_sd(finite);
  return report;
}

}  // namespace teamlab
