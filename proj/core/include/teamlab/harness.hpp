#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamlab/equilibrium.hpp"
#include "teamlab/model.hpp"
#include "teamlab/statistics.hpp"

namespace teamlab {

/// Full factorial validation grid. Enumeration order is productivity (slowest),
/// returns_exponent, effort_cost, team_size, loyalty (fastest).
struct GridSpec {
  std::vector<double> productivity{10.0, 15.0, 20.0, 25.0, 30.0};
  std::vector<double> returns_exponent{0.40, 0.45, 0.50, 0.55, 0.60};
  std::vector<double> effort_cost{1.5, 2.0, 2.5, 3.0, 3.5};
  std::vector<int> team_size{3, 4, 5, 6, 8};
  std::vector<double> loyalty{0.0, 0.225, 0.45, 0.675, 0.9};
  MechanismStrengths mech{0.8, 0.3};
  double effort_cap = 10.0;
  /// Reference configuration used for robustness runs.
  TeamConfig default_point{20.0, 0.5, 2.5, 5, 10.0};

  void validate() const;
  std::size_t size() const;
  std::size_t combination_count() const;  // size() / loyalty.size()
};

struct GridPoint {
  std::size_t index = 0;
  std::size_t combination = 0;  // production-parameter combination
  TeamConfig config;
  double loyalty = 0.0;
};

std::vector<GridPoint> generate_grid(const GridSpec& spec);

/// Loyalty levels every combination is solved at in addition to the grid levels.
inline constexpr double kLowLoyalty = 0.1;
inline constexpr double kHighLoyalty = 0.9;
inline constexpr double kDifferentiationThreshold = 2.0;
inline constexpr double kSynergyThreshold = 1.1;
inline constexpr double kFreeRidingTolerance = 0.05;
inline constexpr double kLowLoyaltyCutoff = 0.3;

struct SynergyResult {
  double baseline = 0.0;
  double benefit_only = 0.0;
  double cost_only = 0.0;
  double combined = 0.0;
  std::optional<double> ratio;  // empty when neither mechanism raises effort on its own
};

SynergyResult synergy_analysis(const TeamConfig& config, double loyalty, const MechanismStrengths& mech,
                               const SolverSettings& solver = {});

/// Synergy ratio from the four efforts; empty when the additive denominator is <= 0.
std::optional<double> synergy_ratio(double baseline, double benefit_only, double cost_only, double combined);

struct Differentiation {
  double high = 0.0;
  double low = 0.0;
  double ratio = 0.0;  // +inf when low == 0 and high > 0
  bool infinite = false;
};

/// Symmetric-equilibrium effort ratio a*(high) / a*(low).
Differentiation effort_differentiation(const TeamConfig& config, const MechanismStrengths& mech,
                                       double high_loyalty = kHighLoyalty, double low_loyalty = kLowLoyalty,
                                       const SolverSettings& solver = {});

/// True when the sequence strictly increases, except that neighbouring values both at
/// `cap` count as a tie at the bound.
bool increasing_with_cap_ties(const std::vector<double>& values, double cap, double tol = 1e-9);
bool decreasing_with_cap_ties(const std::vector<double>& values, double cap, double tol = 1e-9);

/// Symmetric-equilibrium solution for one grid row.
struct RowSolution {
  double effort = 0.0;           // solver effort per member (symmetric, so the mean)
  double interior_effort = 0.0;  // closed form before clamping
  double output = 0.0;
  double utility = 0.0;          // utility of each (identical) member
  bool converged = false;
  int iterations = 0;
  double min_effort = 0.0;
  double max_effort = 0.0;
  std::optional<double> synergy;  // not computed at loyalty 0
};

/// Everything solved for one production-parameter combination.
struct CombinationResult {
  std::vector<RowSolution> rows;            // one per grid loyalty level
  std::optional<double> baseline_solver;    // solver effort at loyalty 0
  std::optional<double> baseline_analytic;  // analytic effort at loyalty 0
  std::optional<double> effort_low;         // solver effort at kLowLoyalty
  std::optional<double> effort_high;        // solver effort at kHighLoyalty
};

CombinationResult solve_combination(const TeamConfig& config, const GridSpec& spec,
                                    const SolverSettings& solver = {});

enum TargetId : std::size_t {
  kFreeRidingBaseline = 0,
  kLoyaltyMonotonicity,
  kEffortDifferentiation,
  kTeamSizeEffect,
  kMechanismSynergy,
  kBoundedOutcomes,
  kTargetCount
};

struct TargetSummary {
  std::string name;
  std::string criterion;
  std::size_t passed = 0;
  std::size_t applicable = 0;
  double fraction = 0.0;   // passed / applicable, 0 when nothing applies
  double reference = 0.0;  // published achievement, as a fraction
};

struct TargetReport {
  std::array<TargetSummary, kTargetCount> targets;
  /// detail[row][target]; empty optional = target not applicable to the row.
  std::vector<std::array<std::optional<bool>, kTargetCount>> detail;
};

/// Evaluates the six behavioural targets. `combinations` must be indexed by
/// GridPoint::combination. Throws ValidationError when auxiliary solutions are missing.
TargetReport evaluate_targets(const GridSpec& spec, const std::vector<CombinationResult>& combinations);

struct SweepRow {
  GridPoint point;
  RowSolution solution;
};

struct ReferenceComparison {
  std::string name;
  double actual = 0.0;
  double reference = 0.0;
};

struct SweepAggregates {
  double median_differentiation = 0.0;
  double mean_differentiation = 0.0;
  std::optional<double> median_synergy;
  stats::TestResult paired_t;  // effort at high vs low loyalty, paired by combination
  double cohens_d = 0.0;       // same two groups
  stats::BootstrapResult effort_bootstrap;
  std::vector<ReferenceComparison> references;
};

struct SweepOptions {
  unsigned workers = 1;
  std::uint64_t seed = 20251016;
  int bootstrap_resamples = 10000;
  SolverSettings solver;
};

struct SweepResult {
  GridSpec spec;
  std::vector<SweepRow> rows;
  std::vector<CombinationResult> combinations;
  TargetReport targets;
  SweepAggregates aggregates;
};

SweepResult run_sweep(const GridSpec& spec, const SweepOptions& options = {});

struct RobustnessTrial {
  std::size_t trial = 0;
  TeamConfig config;
  MechanismStrengths mech;
  double low_loyalty = kLowLoyalty;
  double high_loyalty = kHighLoyalty;
  bool monotonic = false;
  Differentiation differentiation;
};

struct RobustnessReport {
  std::size_t trials = 0;
  double noise_fraction = 0.0;
  std::uint64_t seed = 0;
  double monotonic_fraction = 0.0;
  double differentiation_above_threshold_fraction = 0.0;
  double differentiation_mean = 0.0;
  double differentiation_sd = 0.0;
  std::vector<RobustnessTrial> trial_records;
};

/// Perturbs productivity, returns exponent, effort cost, both mechanism strengths and the
/// differentiation loyalty endpoints of spec.default_point by independent U[1-d, 1+d]
/// factors. Team size is never perturbed.
RobustnessReport monte_carlo_robustness(const GridSpec& spec, double noise_fraction, std::size_t trials,
                                        std::uint64_t seed, unsigned workers = 1,
                                        const SolverSettings& solver = {});

}  // namespace teamlab
