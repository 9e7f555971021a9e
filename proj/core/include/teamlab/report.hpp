#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "teamlab/case_study.hpp"
#include "teamlab/dynamics.hpp"
#include "teamlab/equilibrium.hpp"
#include "teamlab/extended.hpp"
#include "teamlab/harness.hpp"

namespace teamlab::report {

/// Nine significant digits; "inf" / "-inf" for infinities, empty for NaN.
std::string format_number(double value);

/// Writes to a sibling temporary file and renames it over `path`, so readers never see
/// a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Header line of sweep_csv().
std::string sweep_csv_header();
std::string sweep_csv(const SweepResult& sweep);
std::string sweep_summary_json(const SweepResult& sweep);

/// `analytic_symmetric` is reported as null when absent (heterogeneous or extended runs).
std::string equilibrium_json(const TeamConfig& config,
                             const std::variant<MechanismStrengths, ExtendedStrengths>& mechanisms,
                             const LoyaltyProfile& loyalties, const EquilibriumResult& result,
                             std::optional<double> analytic_symmetric);
std::string equilibrium_table(const LoyaltyProfile& loyalties, const EquilibriumResult& result);

std::string robustness_json(const RobustnessReport& report);

/// Long format: period, member, loyalty, effort, output.
std::string trajectory_csv(const Trajectory& trajectory);
std::string dynamics_json(const Trajectory& trajectory, Regime regime);

std::string case_study_json(const CaseStudyReport& report);
/// Plot-ready series: phase, effort, cohesion, loyalty and friends.
std::string case_study_csv(const CaseStudyReport& report);
std::string counterfactual_json(const CounterfactualReport& report);

std::string synergy_json(const TeamConfig& config, double loyalty, const MechanismStrengths& mech,
                         const SynergyResult& result);
std::string synergy_table(const SynergyResult& result);

}  // namespace teamlab::report
