#include "teamlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace teamlab::report {

using Json = nlohmann::ordered_json;

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json config_json(const TeamConfig& c) {
  return Json{{"productivity", c.productivity},
              {"returns_exponent", c.returns_exponent},
              {"effort_cost", c.effort_cost},
              {"team_size", c.team_size},
              {"effort_cap", c.effort_cap}};
}

Json mech_json(const MechanismStrengths& m) {
  return Json{{"loyalty_benefit", m.loyalty_benefit}, {"cost_tolerance", m.cost_tolerance}};
}

Json phase_json(const PhaseOutcome& p) {
  return Json{{"name", p.name},
              {"config", config_json(p.config)},
              {"mean_loyalty", p.mean_loyalty},
              {"expected_rank", p.expected_rank},
              {"interior_effort", p.interior_effort},
              {"effort", p.effort},
              {"clamped", p.clamped},
              {"interior_total", p.interior_total},
              {"total_effort", p.total_effort},
              {"output", p.output},
              {"converged", p.converged},
              {"iterations", p.iterations},
              {"residual", p.residual},
              {"stable_across_starts", p.stable_across_starts},
              {"reference_effort", optional_number(p.reference_effort)},
              {"reference_cohesion", optional_number(p.reference_cohesion)}};
}

std::string flag(const std::optional<bool>& v) {
  if (!v) return "";
  return *v ? "1" : "0";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::filesystem::create_directories(dir);
  auto tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

std::string sweep_csv_header() {
  return "index,productivity,returns_exponent,effort_cost,team_size,effort_cap,loyalty,loyalty_benefit,"
         "cost_tolerance,effort,interior_effort,clamped,output,utility,converged,iterations,synergy_ratio,"
         "t1_free_riding,t2_monotonic,t3_differentiation,t4_team_size,t5_synergy,t6_bounded\n";
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = sweep_csv_header();
  out.reserve(out.size() + sweep.rows.size() * 160);
  for (const auto& row : sweep.rows) {
    const auto& p = row.point;
    const auto& s = row.solution;
    const auto& d = sweep.targets.detail[p.index];
    out += std::to_string(p.index) + ',' + format_number(p.config.productivity) + ',' +
           format_number(p.config.returns_exponent) + ',' + format_number(p.config.effort_cost) + ',' +
           std::to_string(p.config.team_size) + ',' + format_number(p.config.effort_cap) + ',' +
           format_number(p.loyalty) + ',' + format_number(sweep.spec.mech.loyalty_benefit) + ',' +
           format_number(sweep.spec.mech.cost_tolerance) + ',' + format_number(s.effort) + ',' +
           format_number(s.interior_effort) + ',' + (s.interior_effort > p.config.effort_cap ? "1" : "0") + ',' +
           format_number(s.output) + ',' + format_number(s.utility) + ',' + (s.converged ? "1" : "0") + ',' +
           std::to_string(s.iterations) + ',' + (s.synergy ? format_number(*s.synergy) : std::string()) + ',' +
           flag(d[kFreeRidingBaseline]) + ',' + flag(d[kLoyaltyMonotonicity]) + ',' +
           flag(d[kEffortDifferentiation]) + ',' + flag(d[kTeamSizeEffect]) + ',' + flag(d[kMechanismSynergy]) +
           ',' + flag(d[kBoundedOutcomes]) + '\n';
  }
  return out;
}

std::string sweep_summary_json(const SweepResult& sweep) {
  Json out;
  out["grid_size"] = sweep.rows.size();
  out["combinations"] = sweep.combinations.size();
  out["mechanisms"] = mech_json(sweep.spec.mech);
  out["effort_cap"] = sweep.spec.effort_cap;
  Json targets = Json::array();
  for (const auto& t : sweep.targets.targets) {
    targets.push_back(Json{{"name", t.name},
                           {"criterion", t.criterion},
                           {"passed", t.passed},
                           {"applicable", t.applicable},
                           {"fraction", t.fraction},
                           {"reference", t.reference}});
  }
  out["targets"] = targets;
  const auto& a = sweep.aggregates;
  std::size_t unconverged = 0;
  for (const auto& r : sweep.rows) unconverged += r.solution.converged ? 0 : 1;
  out["unconverged_rows"] = unconverged;
  out["aggregates"] = Json{
      {"median_differentiation", a.median_differentiation},
      {"mean_differentiation", a.mean_differentiation},
      {"median_synergy", optional_number(a.median_synergy)},
      {"paired_t", Json{{"statistic", a.paired_t.statistic},
                        {"p_value", a.paired_t.p_value},
                        {"degrees_of_freedom", a.paired_t.degrees_of_freedom}}},
      {"cohens_d", a.cohens_d},
      {"effort_bootstrap", Json{{"point_estimate", a.effort_bootstrap.point_estimate},
                                {"ci_low", a.effort_bootstrap.ci_low},
                                {"ci_high", a.effort_bootstrap.ci_high},
                                {"resamples", a.effort_bootstrap.resamples},
                                {"confidence", a.effort_bootstrap.confidence}}}};
  Json refs = Json::array();
  for (const auto& r : a.references) {
    refs.push_back(Json{{"name", r.name}, {"actual", r.actual}, {"reference", r.reference}});
  }
  out["reference_comparison"] = refs;
  return out.dump(2) + "\n";
}

std::string equilibrium_json(const TeamConfig& config,
                             const std::variant<MechanismStrengths, ExtendedStrengths>& mechanisms,
                             const LoyaltyProfile& loyalties, const EquilibriumResult& result,
                             std::optional<double> analytic_symmetric) {
  Json out;
  out["config"] = config_json(config);
  if (const auto* mech = std::get_if<MechanismStrengths>(&mechanisms)) {
    out["mechanisms"] = mech_json(*mech);
  } else {
    const auto& ext = std::get<ExtendedStrengths>(mechanisms);
    out["extended_mechanisms"] = Json{{"internalization", ext.internalization},
                                      {"warm_glow", ext.warm_glow},
                                      {"cost_tolerance", ext.cost_tolerance},
                                      {"guilt", ext.guilt}};
  }
  out["loyalty"] = loyalties.values;
  out["efforts"] = result.profile.efforts;
  out["utilities"] = result.utilities;
  out["total_effort"] = result.profile.total();
  out["output"] = team_output(config, result.profile);
  out["analytic_symmetric_effort"] = optional_number(analytic_symmetric);
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  out["residual"] = result.residual;
  return out.dump(2) + "\n";
}

std::string equilibrium_table(const LoyaltyProfile& loyalties, const EquilibriumResult& result) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %10s %12s %12s\n", "member", "loyalty", "effort", "utility");
  out << line;
  for (std::size_t i = 0; i < result.profile.efforts.size(); ++i) {
    std::snprintf(line, sizeof line, "%-8zu %10.4f %12.6f %12.6f\n", i, loyalties.values[i],
                  result.profile.efforts[i], result.utilities[i]);
    out << line;
  }
  std::snprintf(line, sizeof line, "iterations %d, converged %s, residual %.3g\n", result.iterations,
                result.converged ? "yes" : "no", result.residual);
  out << line;
  return out.str();
}

std::string robustness_json(const RobustnessReport& report) {
  Json out;
  out["trials"] = report.trials;
  out["noise_fraction"] = report.noise_fraction;
  out["seed"] = report.seed;
  out["monotonic_fraction"] = report.monotonic_fraction;
  out["differentiation_above_2_fraction"] = report.differentiation_above_threshold_fraction;
  out["differentiation_mean"] = report.differentiation_mean;
  out["differentiation_sd"] = report.differentiation_sd;
  out["reference"] = Json{{"monotonic_fraction", 1.0},
                                {"differentiation_above_2_fraction", 0.411},
                                {"differentiation_mean", 2.70},
                                {"differentiation_sd", 2.43}};
  return out.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "period,member,loyalty,effort,output\n";
  for (const auto& s : trajectory.states) {
    for (std::size_t i = 0; i < s.loyalty.values.size(); ++i) {
      out += std::to_string(s.period) + ',' + std::to_string(i) + ',' + format_number(s.loyalty.values[i]) + ',' +
             format_number(s.efforts.efforts[i]) + ',' + format_number(s.output) + '\n';
    }
  }
  return out;
}

std::string dynamics_json(const Trajectory& trajectory, Regime regime) {
  Json out;
  out["periods"] = trajectory.states.empty() ? 0 : trajectory.states.back().period;
  out["output_target"] = trajectory.output_target;
  out["regime"] = to_string(regime);
  const auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  if (!trajectory.states.empty()) {
    out["initial_mean_loyalty"] = mean_of(trajectory.states.front().loyalty.values);
    out["final_mean_loyalty"] = mean_of(trajectory.states.back().loyalty.values);
    out["final_output"] = trajectory.states.back().output;
  }
  std::size_t unconverged = 0;
  for (const auto& s : trajectory.states) unconverged += s.converged ? 0 : 1;
  out["unconverged_periods"] = unconverged;
  return out.dump(2) + "\n";
}

std::string case_study_json(const CaseStudyReport& report) {
  Json out;
  out["scenario"] = report.scenario;
  Json phases = Json::array();
  for (const auto& p : report.phases) phases.push_back(phase_json(p));
  out["phases"] = phases;
  out["strictly_decreasing"] = report.strictly_decreasing;
  out["spearman_per_member"] = optional_number(report.spearman_per_member);
  out["spearman_total"] = optional_number(report.spearman_total);
  out["pearson_r"] = optional_number(report.pearson_r);
  out["pearson_p"] = optional_number(report.pearson_p);
  out["phase1_cohesion"] = optional_number(report.phase1_cohesion);
  Json rubric;
  Json per_phase = Json::array();
  for (std::size_t i = 0; i < report.rubric.phases.size(); ++i) {
    const auto& s = report.rubric.phases[i];
    per_phase.push_back(Json{{"phase", report.phases[i].name},
                             {"convergence", s.convergence},
                             {"magnitude", s.magnitude},
                             {"pattern", s.pattern},
                             {"trend", s.trend},
                             {"total", s.total()}});
  }
  rubric["phases"] = per_phase;
  rubric["total"] = report.rubric.total;
  rubric["maximum"] = report.rubric.maximum;
  rubric["ordering_total"] = report.rubric.ordering_total;
  rubric["ordering_maximum"] = report.rubric.ordering_maximum;
  out["rubric"] = rubric;
  return out.dump(2) + "\n";
}

std::string case_study_csv(const CaseStudyReport& report) {
  std::string out =
      "phase,name,team_size,loyalty,interior_effort,effort,total_effort,output,cohesion,reference_effort,"
      "reference_cohesion\n";
  for (std::size_t i = 0; i < report.phases.size(); ++i) {
    const auto& p = report.phases[i];
    // Phases carry a uniform loyalty, whose dependency-weighted mean is the loyalty itself;
    // the first phase uses the scenario's own member loyalties when records exist.
    const double cohesion = (i == 0 && report.phase1_cohesion) ? *report.phase1_cohesion : p.mean_loyalty;
    out += std::to_string(i + 1) + ',' + p.name + ',' + std::to_string(p.config.team_size) + ',' +
           format_number(p.mean_loyalty) + ',' + format_number(p.interior_effort) + ',' + format_number(p.effort) +
           ',' + format_number(p.total_effort) + ',' + format_number(p.output) + ',' + format_number(cohesion) + ',' +
           (p.reference_effort ? format_number(*p.reference_effort) : std::string()) + ',' +
           (p.reference_cohesion ? format_number(*p.reference_cohesion) : std::string()) + '\n';
  }
  return out;
}

std::string counterfactual_json(const CounterfactualReport& report) {
  Json out;
  out["scenario"] = report.scenario;
  out["modifier"] = Json{{"kind", to_string(report.modifier.kind)},
                         {"magnitude", report.modifier.magnitude},
                         {"phase", report.modifier.phase ? Json(*report.modifier.phase) : Json(nullptr)}};
  out["expectation"] = report.expectation;
  out["expectation_met"] = report.expectation_met;
  out["identical"] = report.identical;
  Json phases = Json::array();
  for (const auto& p : report.phases) {
    phases.push_back(Json{{"name", p.name},
                          {"modified", p.modified},
                          {"baseline", phase_json(p.baseline)},
                          {"counterfactual", phase_json(p.counterfactual)},
                          {"interior_effort_change_pct", p.interior_effort_change_pct},
                          {"effort_change_pct", p.effort_change_pct},
                          {"output_change_pct", p.output_change_pct}});
  }
  out["phases"] = phases;
  return out.dump(2) + "\n";
}

std::string synergy_json(const TeamConfig& config, double loyalty, const MechanismStrengths& mech,
                         const SynergyResult& r) {
  Json out;
  out["config"] = config_json(config);
  out["loyalty"] = loyalty;
  out["mechanisms"] = mech_json(mech);
  out["baseline"] = r.baseline;
  out["benefit_only"] = r.benefit_only;
  out["cost_only"] = r.cost_only;
  out["combined"] = r.combined;
  out["synergy_ratio"] = optional_number(r.ratio);
  return out.dump(2) + "\n";
}

std::string synergy_table(const SynergyResult& r) {
  std::ostringstream out;
  char line[128];
  const auto row = [&](const char* name, double effort) {
    std::snprintf(line, sizeof line, "%-14s %12.6f %+12.6f\n", name, effort, effort - r.baseline);
    out << line;
  };
  std::snprintf(line, sizeof line, "%-14s %12s %12s\n", "mechanisms", "effort", "gain");
  out << line;
  row("none", r.baseline);
  row("benefit only", r.benefit_only);
  row("cost only", r.cost_only);
  row("combined", r.combined);
  if (r.ratio) {
    std::snprintf(line, sizeof line, "synergy ratio %.6f\n", *r.ratio);
  } else {
    std::snprintf(line, sizeof line, "synergy ratio undefined\n");
  }
  out << line;
  return out.str();
}

}  // namespace teamlab::report
