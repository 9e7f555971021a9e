#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "teamlab/equilibrium.hpp"
#include "teamlab/scenario.hpp"

namespace teamlab {

struct PhaseOutcome {
  std::string name;
  TeamConfig config;
  double mean_loyalty = 0.0;
  int expected_rank = 0;
  /// Symmetric equilibrium effort before the effort cap; the ranking statistic.
  double interior_effort = 0.0;
  double effort = 0.0;  // solver per-member effort (respects the cap)
  bool clamped = false;
  double interior_total = 0.0;  // interior_effort * n
  double total_effort = 0.0;    // effort * n
  double output = 0.0;          // realised output at the solver profile
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  bool stable_across_starts = false;
  std::optional<double> reference_effort;
  std::optional<double> reference_cohesion;
};

/// 60-point checklist: per phase 3 (convergence) + 4 (magnitude) + 4 (pattern) + 4 (trend).
struct PhaseScore {
  int convergence = 0;
  int magnitude = 0;
  int pattern = 0;
  int trend = 0;
  int total() const { return convergence + magnitude + pattern + trend; }
};

struct Rubric {
  std::vector<PhaseScore> phases;
  int total = 0;
  int maximum = 0;
  /// Convergence + pattern + trend, the categories that do not depend on reference magnitudes.
  int ordering_total = 0;
  int ordering_maximum = 0;
};

struct CaseStudyReport {
  std::string scenario;
  std::vector<PhaseOutcome> phases;
  /// Empty when fewer than two phases or when predicted efforts are all tied.
  std::optional<double> spearman_per_member;
  std::optional<double> spearman_total;
  std::optional<double> pearson_r;
  std::optional<double> pearson_p;
  bool strictly_decreasing = false;  // interior per-member effort across phases
  std::optional<double> phase1_cohesion;  // from dependency records and member loyalties
  Rubric rubric;
};

CaseStudyReport run_case_study(const Scenario& scenario, const SolverSettings& solver = {});

enum class CounterfactualKind {
  kScaleMechanisms,  // multiply both strengths by (1 - magnitude)
  kCapTeamSize,      // limit every phase's team size to magnitude
  kShiftLoyalty,     // add magnitude to every phase's mean loyalty (capped at 1)
};

struct Counterfactual {
  CounterfactualKind kind = CounterfactualKind::kScaleMechanisms;
  double magnitude = 0.0;
  std::optional<std::size_t> phase;  // apply to one phase only

  /// Parses "cf1", "cf2", "cf3" (or the long names) into a kind.
  static CounterfactualKind parse_kind(const std::string& text);
};

std::string to_string(CounterfactualKind kind);

struct PhaseComparison {
  std::string name;
  bool modified = false;
  PhaseOutcome baseline;
  PhaseOutcome counterfactual;
  double interior_effort_change_pct = 0.0;
  double effort_change_pct = 0.0;
  double output_change_pct = 0.0;
};

struct CounterfactualReport {
  std::string scenario;
  Counterfactual modifier;
  std::string expectation;
  std::vector<PhaseComparison> phases;
  bool identical = false;  // counterfactual reproduces the baseline exactly
  bool expectation_met = false;
};

CounterfactualReport run_counterfactual(const Scenario& scenario, const Counterfactual& modifier,
                                        const SolverSettings& solver = {});

}  // namespace teamlab
