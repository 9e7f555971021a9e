// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracle_values.hpp"
#include "reference_model.hpp"
#include "support.hpp"
#include "teamlab/case_study.hpp"
#include "teamlab/dynamics.hpp"
#include "teamlab/equilibrium.hpp"
#include "teamlab/harness.hpp"
#include "teamlab/report.hpp"
#include "teamlab/scenario.hpp"
#include "teamlab/statistics.hpp"
#include "teamlab/translation.hpp"

using namespace teamlab;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

double golden_argmax(const TeamConfig& cfg, const MechanismStrengths& mech, double theta, const ActionProfile& p,
                     std::size_t i) {
  const reference::Params params{cfg.productivity, cfg.returns_exponent, cfg.effort_cost, cfg.effort_cap,
                                 mech.loyalty_benefit, mech.cost_tolerance, cfg.team_size};
  return reference::argmax(params, theta, std::vector<long double>(p.efforts.begin(), p.efforts.end()), i);
}

Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(101);
  double worst_gain = 0.0, worst_argmax = 0.0;
  int failures = 0;
  for (int k = 0; k < 50; ++k) {
    const auto cfg = testing::random_config(rng, 2, 3);
    const auto mech = testing::random_mech(rng);
    const auto loyal = testing::random_loyalty(rng, cfg.team_size);
    const auto eq = solve_tpe(cfg, mech, loyal);
    if (!eq.converged) {
      ++failures;
      continue;
    }
    const std::size_t n = eq.profile.efforts.size();
    // Walk the 21^n grid; at each point every member considers moving to its coordinate.
    std::vector<int> idx(n, 0);
    const auto grid_value = [&](int j) { return cfg.effort_cap * j / 20.0; };
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        ActionProfile dev = eq.profile;
        dev.efforts[i] = grid_value(idx[i]);
        const double gain = utility(cfg, mech, loyal.values[i], dev, i) - eq.utilities[i];
        worst_gain = std::max(worst_gain, gain / std::max(1.0, std::abs(eq.utilities[i])));
      }
      std::size_t d = 0;
      while (d < n && ++idx[d] == 21) idx[d++] = 0;
      if (d == n) break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double g = golden_argmax(cfg, mech, loyal.values[i], eq.profile, i);
      worst_argmax = std::max(worst_argmax, std::abs(g - eq.profile.efforts[i]));
    }
  }
  out.require(failures == 0, std::to_string(failures) + " solves did not converge");
  // Deviation gains are second order in the solver tolerance (1e-6); allow that much.
  out.require(worst_gain <= 1e-6, "grid deviation gains " + fmt("%.3g", worst_gain));
  out.require(worst_argmax <= 1e-4, "argmax gap " + fmt("%.3g", worst_argmax));
  out.detail = out.detail.empty() ? "max grid gain " + fmt("%.2g", worst_gain) + ", max argmax gap " +
                                        fmt("%.2g", worst_argmax)
                                  : out.detail;
  return out;
}

Outcome closed_form_fidelity() {
  Outcome out;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_br = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto cfg = testing::random_config(rng);
    const auto mech = testing::random_mech(rng);
    const auto a = testing::random_actions(rng, cfg);
    const double theta = u(rng);
    const double closed = best_response(cfg, mech, theta, a.total() - a.efforts[0]);
    worst_br = std::max(worst_br, std::abs(closed - golden_argmax(cfg, mech, theta, a, 0)));
  }
  double worst_sym = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto cfg = testing::random_config(rng);
    const auto mech = testing::random_mech(rng);
    const double theta = u(rng);
    const auto eq = solve_tpe(cfg, mech, LoyaltyProfile::uniform(cfg.team_size, theta));
    out.require(eq.converged, "symmetric solve did not converge");
    const double analytic = analytic_symmetric_equilibrium(cfg, mech, theta);
    for (double e : eq.profile.efforts) worst_sym = std::max(worst_sym, std::abs(e - analytic));
  }
  out.require(worst_br <= 1e-6, "best response gap " + fmt("%.3g", worst_br));
  out.require(worst_sym <= 1e-5, "symmetric gap " + fmt("%.3g", worst_sym));
  if (out.passed) out.detail = "max BR gap " + fmt("%.2g", worst_br) + ", max symmetric gap " + fmt("%.2g", worst_sym);
  return out;
}

Outcome behavioral_targets() {
  Outcome out;
  const auto r = run_sweep(GridSpec{}, SweepOptions{});
  const auto& t = r.targets.targets;
  out.require(r.rows.size() == 3125, "grid has " + std::to_string(r.rows.size()) + " rows");
  out.require(t[kLoyaltyMonotonicity].fraction == 1.0, "monotonicity " + fmt("%.4f", t[kLoyaltyMonotonicity].fraction));
  out.require(t[kBoundedOutcomes].fraction == 1.0, "bounded " + fmt("%.4f", t[kBoundedOutcomes].fraction));
  out.require(t[kFreeRidingBaseline].fraction >= 0.95, "free riding " + fmt("%.4f", t[kFreeRidingBaseline].fraction));
  out.require(t[kEffortDifferentiation].fraction >= 0.95,
              "differentiation " + fmt("%.4f", t[kEffortDifferentiation].fraction));
  out.require(t[kMechanismSynergy].fraction >= 0.90, "synergy " + fmt("%.4f", t[kMechanismSynergy].fraction));
  out.require(t[kTeamSizeEffect].fraction == 1.0, "team size " + fmt("%.4f", t[kTeamSizeEffect].fraction));
  std::string fractions;
  for (const auto& s : t) fractions += (fractions.empty() ? "" : " ") + s.name + "=" + fmt("%.4f", s.fraction);
  out.detail = out.passed ? fractions : out.detail + " (" + fractions + ")";
  out.detail += "; median differentiation " + fmt("%.2f", r.aggregates.median_differentiation) + " (ref 15.04)";
  return out;
}

Outcome monte_carlo() {
  Outcome out;
  const auto a = monte_carlo_robustness(GridSpec{}, 0.15, 2000, 20251016, 1);
  const auto b = monte_carlo_robustness(GridSpec{}, 0.15, 2000, 20251016, 1);
  out.require(a.monotonic_fraction == 1.0, "monotonic fraction " + fmt("%.4f", a.monotonic_fraction));
  out.require(report::robustness_json(a) == report::robustness_json(b), "reports differ for identical seeds");
  if (out.passed) {
    out.detail = "monotonic " + fmt("%.4f", a.monotonic_fraction) + ", differentiation>2 " +
                 fmt("%.4f", a.differentiation_above_threshold_fraction) + " (ref 0.411), mean " +
                 fmt("%.2f", a.differentiation_mean) + " (ref 2.70)";
  }
  return out;
}

Outcome apache_case_study() {
  Outcome out;
  const auto r = run_case_study(load_scenario(std::string(TEAMLAB_SCENARIO_DIR) + "/apache.json"));
  out.require(r.strictly_decreasing, "phase efforts not strictly decreasing");
  out.require(r.spearman_per_member && std::abs(*r.spearman_per_member - 1.0) < 1e-12, "spearman != 1");
  out.require(r.rubric.maximum == 60 && r.rubric.total >= 0 && r.rubric.total <= 60, "rubric out of range");
  out.require(r.rubric.ordering_total == r.rubric.ordering_maximum, "ordering categories incomplete");
  if (out.passed) {
    out.detail = "spearman 1.0, rubric " + std::to_string(r.rubric.total) + "/60 (ordering " +
                 std::to_string(r.rubric.ordering_total) + "/" + std::to_string(r.rubric.ordering_maximum) +
                 ", magnitudes reported only)";
  }
  return out;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

Outcome dynamics_bifurcation() {
  Outcome out;
  const TeamConfig cfg;
  const MechanismStrengths mech;
  DynamicsSettings s;
  const auto up = simulate_loyalty_evolution(cfg, mech, LoyaltyProfile::uniform(5, 0.6), s);
  const auto down = simulate_loyalty_evolution(cfg, mech, LoyaltyProfile::uniform(5, 0.1), s);
  const double hi = mean_of(up.states.back().loyalty.values);
  const double lo = mean_of(down.states.back().loyalty.values);
  out.require(classify_regime(up) == Regime::kVirtuous && hi == 1.0, "0.6 start ends at " + fmt("%.4f", hi));
  out.require(classify_regime(down) == Regime::kVicious && lo == 0.0, "0.1 start ends at " + fmt("%.4f", lo));
  DynamicsSettings frozen;
  frozen.learning_rate = 0.0;
  const LoyaltyProfile start{{0.2, 0.4, 0.6, 0.8, 0.3}};
  const auto flat = simulate_loyalty_evolution(cfg, mech, start, frozen);
  bool constant = true;
  for (const auto& st : flat.states) constant = constant && st.loyalty == start;
  out.require(constant, "rate 0 trajectory moved");
  if (out.passed) out.detail = "0.6 -> " + fmt("%.2f", hi) + ", 0.1 -> " + fmt("%.2f", lo) + ", rate 0 constant";
  return out;
}

Outcome statistics_correctness() {
  Outcome out;
  double worst = 0.0;
  for (const auto& q : oracle::kTQuantiles) {
    worst = std::max(worst, std::abs(stats::student_t_cdf(q.quantile, q.df) - q.probability));
  }
  out.require(worst <= 1e-4, "t cdf error " + fmt("%.3g", worst));
  const std::vector<double> d{1, 2, 3, 4, 5}, zero(5, 0.0);
  const double t = stats::paired_t_test(d, zero).statistic;
  out.require(std::abs(t - 4.2426) < 1e-4, "paired t " + fmt("%.6f", t));
  std::vector<double> xs(100);
  std::iota(xs.begin(), xs.end(), 1.0);
  const auto ci = stats::bootstrap_mean_ci(xs, 10000, 0.95, 20251016);
  out.require(ci.ci_low < 50.5 && ci.ci_high > 50.5, "bootstrap CI misses 50.5");
  std::vector<double> x, y, z;
  for (int i = 0; i < 20; ++i) {
    x.push_back(i * 0.7 - 3.0);
    y.push_back(2.5 * x.back() + 4.0);
    z.push_back(-1.5 * x.back() + 1.0);
  }
  const double rp = stats::pearson_r(x, y).r, rn = stats::pearson_r(x, z).r;
  out.require(std::abs(rp - 1.0) <= 1e-9 && std::abs(rn + 1.0) <= 1e-9, "affine pearson not +-1");
  if (out.passed) {
    out.detail = "t cdf max error " + fmt("%.2g", worst) + ", paired t " + fmt("%.4f", t) + ", CI [" +
                 fmt("%.2f", ci.ci_low) + ", " + fmt("%.2f", ci.ci_high) + "]";
  }
  return out;
}

Outcome numerical_identities() {
  Outcome out;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0), scale(0.01, 100.0);
  double expanded = 0.0, conservation = 0.0, cohesion = 0.0, marginal = 0.0;
  const double h = 1e-5;
  for (int k = 0; k < 1000; ++k) {
    const auto cfg = testing::random_config(rng);
    const auto mech = testing::random_mech(rng);
    const auto a = testing::random_actions(rng, cfg, 0.5);
    const double theta = u(rng);
    const std::size_t i = static_cast<std::size_t>(k) % a.efforts.size();

    const double compact = utility(cfg, mech, theta, a, i);
    expanded = std::max(expanded, std::abs(compact - utility_expanded(cfg, mech, theta, a, i)) /
                                      std::max(1.0, std::abs(compact)));

    double payoffs = 0.0;
    for (std::size_t j = 0; j < a.efforts.size(); ++j) payoffs += base_payoff(cfg, a, j);
    const double material = team_output(cfg, a) - cfg.effort_cost * a.total();
    conservation = std::max(conservation, std::abs(payoffs - material) / std::max(1.0, std::abs(material)));

    std::map<std::string, double> w, t, scaled;
    const double factor = scale(rng);
    for (std::size_t j = 0; j < a.efforts.size(); ++j) {
      const auto id = "m" + std::to_string(j);
      w[id] = 0.01 + u(rng);
      t[id] = u(rng);
      scaled[id] = w[id] * factor;
    }
    cohesion = std::max(cohesion, std::abs(team_cohesion(w, t) - team_cohesion(scaled, t)));

    TeamConfig loose = cfg;
    loose.effort_cap += 1.0;
    auto up = a, down = a;
    up.efforts[i] += h;
    down.efforts[i] -= h;
    const double fd = (utility(loose, mech, theta, up, i) - utility(loose, mech, theta, down, i)) / (2 * h);
    marginal = std::max(marginal, std::abs(fd - marginal_utility(cfg, mech, theta, a, i)));
  }
  out.require(expanded <= 1e-10, "expanded vs compact " + fmt("%.3g", expanded));
  out.require(conservation <= 1e-10, "material conservation " + fmt("%.3g", conservation));
  out.require(cohesion <= 1e-12, "cohesion scale invariance " + fmt("%.3g", cohesion));
  out.require(marginal <= 1e-4, "marginal vs finite difference " + fmt("%.3g", marginal));
  if (out.passed) {
    out.detail = "max errors: expanded " + fmt("%.1g", expanded) + ", conservation " + fmt("%.1g", conservation) +
                 ", cohesion " + fmt("%.1g", cohesion) + ", marginal " + fmt("%.1g", marginal);
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "oracle equivalence", 10.0, oracle_equivalence},
      {2, "closed-form fidelity", 5.0, closed_form_fidelity},
      {3, "behavioral targets on the default grid", 60.0, behavioral_targets},
      {4, "Monte Carlo robustness", 60.0, monte_carlo},
      {5, "Apache case study", 5.0, apache_case_study},
      {6, "dynamics bifurcation", 5.0, dynamics_bifurcation},
      {7, "statistics correctness", 60.0, statistics_correctness},
      {8, "numerical identities", 60.0, numerical_identities},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.passed = false;
      o.detail += "; runtime " + fmt("%.2f", secs) + " s over the " + fmt("%.0f", c.limit_seconds) + " s limit";
    }
    std::printf("[%s] %d %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
