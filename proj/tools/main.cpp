// teamlab: command-line front end for the team production model.
//
// Exit status: 0 ok, 1 usage, 2 validation, 3 runtime or convergence failure.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teamlab/case_study.hpp"
#include "teamlab/dynamics.hpp"
#include "teamlab/equilibrium.hpp"
#include "teamlab/extended.hpp"
#include "teamlab/harness.hpp"
#include "teamlab/random.hpp"
#include "teamlab/report.hpp"
#include "teamlab/scenario.hpp"

namespace fs = std::filesystem;
using namespace teamlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

// Raised for a solver that did not meet its tolerance.
struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  std::optional<double> productivity, returns_exponent, effort_cost, effort_cap;
  std::optional<int> team_size;
  std::optional<double> loyalty_benefit, cost_tolerance;

  void add(CLI::App* cmd) {
    cmd->add_option("--omega", productivity, "Productivity");
    cmd->add_option("--beta", returns_exponent, "Returns exponent, in (0,1)");
    cmd->add_option("--cost", effort_cost, "Marginal effort cost");
    cmd->add_option("--n", team_size, "Team size");
    cmd->add_option("--cap", effort_cap, "Effort cap");
    cmd->add_option("--phi-b", loyalty_benefit, "Loyalty benefit strength");
    cmd->add_option("--phi-c", cost_tolerance, "Cost tolerance strength");
  }

  TeamConfig config(TeamConfig base = {}) const {
    if (productivity) base.productivity = *productivity;
    if (returns_exponent) base.returns_exponent = *returns_exponent;
    if (effort_cost) base.effort_cost = *effort_cost;
    if (team_size) base.team_size = *team_size;
    if (effort_cap) base.effort_cap = *effort_cap;
    base.validate();
    return base;
  }

  MechanismStrengths mech(MechanismStrengths base = {}) const {
    if (loyalty_benefit) base.loyalty_benefit = *loyalty_benefit;
    if (cost_tolerance) base.cost_tolerance = *cost_tolerance;
    base.validate();
    return base;
  }
};

struct SolverFlags {
  double tolerance = 1e-6;
  int max_iterations = 100000;
  std::string scheme = "relaxed";

  void add(CLI::App* cmd) {
    cmd->add_option("--tolerance", tolerance, "Solver tolerance")->capture_default_str();
    cmd->add_option("--max-iterations", max_iterations, "Solver iteration limit")->capture_default_str();
    cmd->add_option("--scheme", scheme, "Update scheme")
        ->check(CLI::IsMember({"relaxed", "gauss-seidel"}))
        ->capture_default_str();
  }

  SolverSettings settings() const {
    SolverSettings s;
    s.tolerance = tolerance;
    s.max_iterations = max_iterations;
    s.scheme = scheme == "gauss-seidel" ? UpdateScheme::kGaussSeidel : UpdateScheme::kRelaxedSimultaneous;
    s.validate();
    return s;
  }
};

// Accepts a path, or the bare name of a shipped scenario.
fs::path resolve_scenario(const std::string& name) {
  fs::path direct(name);
  if (fs::exists(direct)) return direct;
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("TEAMLAB_SCENARIO_DIR")) dirs.emplace_back(env);
  dirs.emplace_back(TEAMLAB_SCENARIO_DIR);
  for (const auto& dir : dirs) {
    for (const auto& candidate : {dir / name, dir / (name + ".json")}) {
      if (fs::exists(candidate)) return candidate;
    }
  }
  throw std::runtime_error("scenario '" + name + "' not found");
}

void emit(const std::optional<fs::path>& path, const std::string& content) {
  if (path) {
    report::write_file_atomic(*path, content);
  } else {
    std::cout << content;
  }
}

// ---- solve ------------------------------------------------------------------

struct SolveCommand {
  std::optional<std::string> scenario;
  ModelFlags model;
  SolverFlags solver;
  std::vector<double> loyalty;
  std::optional<fs::path> json_out;
  bool json_stdout = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("solve", "Solve for the team production equilibrium");
    cmd->add_option("--scenario", scenario, "Scenario file or shipped scenario name");
    model.add(cmd);
    solver.add(cmd);
    cmd->add_option("--theta", loyalty, "Loyalty: one value for everyone or one per member")->delimiter(',');
    cmd->add_option("--json", json_out, "Write the equilibrium JSON to this file");
    cmd->add_flag("--print-json", json_stdout, "Print JSON instead of the table");
    cmd->callback([this] { run(); });
  }

  void run() {
    TeamConfig config;
    std::variant<MechanismStrengths, ExtendedStrengths> mechanisms = MechanismStrengths{};
    LoyaltyProfile loyalties;
    if (scenario) {
      const Scenario s = load_scenario(resolve_scenario(*scenario));
      config = model.config(s.config);
      mechanisms = s.mechanisms;
      if (auto* m = std::get_if<MechanismStrengths>(&mechanisms)) *m = model.mech(*m);
      loyalties = s.loyalty_profile();
    } else {
      config = model.config();
      mechanisms = model.mech();
    }
    if (loyalty.size() == 1) {
      loyalties = LoyaltyProfile::uniform(config.team_size, loyalty.front());
    } else if (!loyalty.empty()) {
      loyalties.values = loyalty;
    } else if (!scenario) {
      loyalties = LoyaltyProfile::uniform(config.team_size, 0.0);
    }
    loyalties.validate(config);

    const auto settings = solver.settings();
    EquilibriumResult result;
    std::optional<double> analytic;
    if (const auto* m = std::get_if<MechanismStrengths>(&mechanisms)) {
      result = solve_tpe(config, *m, loyalties, settings);
      const auto& v = loyalties.values;
      if (std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end()) {
        analytic = analytic_symmetric_equilibrium(config, *m, v.front());
      }
    } else {
      result = solve_extended(config, std::get<ExtendedStrengths>(mechanisms), loyalties, settings);
    }

    const auto json = report::equilibrium_json(config, mechanisms, loyalties, result, analytic);
    if (json_out) report::write_file_atomic(*json_out, json);
    if (json_stdout) {
      std::cout << json;
    } else {
      std::cout << report::equilibrium_table(loyalties, result);
      if (analytic) std::printf("analytic symmetric effort %.9g\n", *analytic);
    }
    if (!result.converged) throw ConvergenceFailure("solver did not converge");
  }
};

// ---- sweep ------------------------------------------------------------------

struct SweepCommand {
  GridSpec spec;
  std::optional<double> loyalty_benefit, cost_tolerance;
  unsigned workers = 1;
  std::uint64_t seed = SweepOptions{}.seed;
  int resamples = SweepOptions{}.bootstrap_resamples;
  fs::path out_dir = "sweep_out";
  SolverFlags solver;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "Run the factorial validation grid");
    cmd->add_option("--omega", spec.productivity, "Productivity levels")->delimiter(',');
    cmd->add_option("--beta", spec.returns_exponent, "Returns exponent levels")->delimiter(',');
    cmd->add_option("--cost", spec.effort_cost, "Effort cost levels")->delimiter(',');
    cmd->add_option("--n", spec.team_size, "Team sizes")->delimiter(',');
    cmd->add_option("--theta", spec.loyalty, "Loyalty levels")->delimiter(',');
    cmd->add_option("--cap", spec.effort_cap, "Effort cap")->capture_default_str();
    cmd->add_option("--phi-b", loyalty_benefit, "Loyalty benefit strength");
    cmd->add_option("--phi-c", cost_tolerance, "Cost tolerance strength");
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    cmd->add_option("--seed", seed, "Bootstrap seed")->capture_default_str();
    cmd->add_option("--resamples", resamples, "Bootstrap resamples")->capture_default_str();
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    solver.add(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    if (loyalty_benefit) spec.mech.loyalty_benefit = *loyalty_benefit;
    if (cost_tolerance) spec.mech.cost_tolerance = *cost_tolerance;
    spec.validate();
    SweepOptions options;
    options.workers = workers;
    options.seed = seed;
    options.bootstrap_resamples = resamples;
    options.solver = solver.settings();
    const auto result = run_sweep(spec, options);

    report::write_file_atomic(out_dir / "sweep.csv", report::sweep_csv(result));
    report::write_file_atomic(out_dir / "summary.json", report::sweep_summary_json(result));

    std::printf("%zu rows, %zu combinations -> %s\n", result.rows.size(), result.combinations.size(),
                out_dir.string().c_str());
    std::printf("%-32s %10s %10s %10s\n", "target", "passed", "fraction", "reference");
    for (const auto& t : result.targets.targets) {
      std::printf("%-32s %5zu/%-5zu %10.4f %10.4f\n", t.name.c_str(), t.passed, t.applicable, t.fraction,
                  t.reference);
    }
    for (const auto& r : result.aggregates.references) {
      std::printf("%-32s actual %-12.6g reference %.6g\n", r.name.c_str(), r.actual, r.reference);
    }
    std::size_t unconverged = 0;
    for (const auto& r : result.rows) unconverged += r.solution.converged ? 0 : 1;
    if (unconverged > 0) {
      throw ConvergenceFailure(std::to_string(unconverged) + " grid rows did not converge");
    }
  }
};

// ---- robustness -------------------------------------------------------------

struct RobustnessCommand {
  std::size_t trials = 2000;
  double noise = 0.15;
  std::uint64_t seed = 20251016;
  unsigned workers = 1;
  std::optional<fs::path> out;
  SolverFlags solver;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("robustness", "Monte Carlo perturbation of the default configuration");
    cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--noise", noise, "Relative perturbation half-width")
        ->check(CLI::Range(0.0, 0.99))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    cmd->add_option("--out", out, "Write the JSON report to this file");
    solver.add(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    const auto r = monte_carlo_robustness(GridSpec{}, noise, trials, seed, workers, solver.settings());
    emit(out, report::robustness_json(r));
    if (out) {
      std::printf("monotonic %.4f, differentiation>2 %.4f, mean %.4f, sd %.4f\n", r.monotonic_fraction,
                  r.differentiation_above_threshold_fraction, r.differentiation_mean, r.differentiation_sd);
    }
  }
};

// ---- dynamics ---------------------------------------------------------------

struct DynamicsCommand {
  ModelFlags model;
  SolverFlags solver;
  std::vector<double> initial{0.6};
  int periods = DynamicsSettings{}.periods;
  double rate = DynamicsSettings{}.learning_rate;
  std::optional<double> target;
  double jitter = 0.0;
  std::uint64_t seed = 20251016;
  fs::path out_dir = "dynamics_out";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("dynamics", "Simulate loyalty evolution driven by team output");
    model.add(cmd);
    solver.add(cmd);
    cmd->add_option("--theta", initial, "Initial loyalty: one value for everyone or one per member")
        ->delimiter(',')->capture_default_str();
    cmd->add_option("--periods", periods, "Number of periods")->capture_default_str();
    cmd->add_option("--rate", rate, "Learning rate")->capture_default_str();
    cmd->add_option("--target", target, "Output target (default: midpoint of outputs at loyalty 0 and 0.9)");
    cmd->add_option("--jitter", jitter, "Uniform noise half-width added to initial loyalties")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for --jitter")->capture_default_str();
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    const auto config = model.config();
    const auto mech = model.mech();
    LoyaltyProfile start = initial.size() == 1 ? LoyaltyProfile::uniform(config.team_size, initial.front())
                                               : LoyaltyProfile{initial};
    if (jitter > 0.0) {
      auto rng = make_stream(seed, 0);
      std::uniform_real_distribution<double> noise(-jitter, jitter);
      for (double& v : start.values) v = std::clamp(v + noise(rng), 0.0, 1.0);
    }
    start.validate(config);
    DynamicsSettings settings;
    settings.periods = periods;
    settings.learning_rate = rate;
    settings.output_target = target;
    const auto trajectory = simulate_loyalty_evolution(config, mech, start, settings, solver.settings());
    const auto regime = classify_regime(trajectory);
    report::write_file_atomic(out_dir / "trajectory.csv", report::trajectory_csv(trajectory));
    report::write_file_atomic(out_dir / "dynamics.json", report::dynamics_json(trajectory, regime));
    const auto& last = trajectory.states.back();
    double mean = 0.0;
    for (double v : last.loyalty.values) mean += v;
    mean /= static_cast<double>(last.loyalty.values.size());
    std::printf("regime %s, final mean loyalty %.6f, final output %.6f (target %.6f)\n",
                to_string(regime).c_str(), mean, last.output, trajectory.output_target);
    for (const auto& s : trajectory.states) {
      if (!s.converged) throw ConvergenceFailure("equilibrium did not converge in period " + std::to_string(s.period));
    }
  }
};

// ---- case-study -------------------------------------------------------------

struct CaseStudyCommand {
  std::string scenario;
  std::vector<std::string> counterfactuals;
  fs::path out_dir = "case_study_out";
  SolverFlags solver;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("case-study", "Run scenario phases and optional counterfactuals");
    cmd->add_option("scenario", scenario, "Scenario file or shipped scenario name")->required();
    cmd->add_option("--cf", counterfactuals, "Counterfactual KIND:MAGNITUDE[:PHASE], KIND in cf1|cf2|cf3");
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    solver.add(cmd);
    cmd->callback([this] { run(); });
  }

  static Counterfactual parse_counterfactual(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) {
      throw CLI::ValidationError("--cf", "expected KIND:MAGNITUDE[:PHASE], got '" + text + "'");
    }
    Counterfactual cf;
    try {
      cf.kind = Counterfactual::parse_kind(parts[0]);
      cf.magnitude = std::stod(parts[1]);
      if (parts.size() == 3) {
        const int phase = std::stoi(parts[2]);
        if (phase < 1) throw std::invalid_argument("phase");
        cf.phase = static_cast<std::size_t>(phase - 1);
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--cf", "cannot parse '" + text + "'");
    }
    return cf;
  }

  void run() {
    std::vector<Counterfactual> modifiers;
    for (const auto& text : counterfactuals) modifiers.push_back(parse_counterfactual(text));
    const Scenario s = load_scenario(resolve_scenario(scenario));
    const auto settings = solver.settings();
    const auto report = run_case_study(s, settings);
    report::write_file_atomic(out_dir / "case_study.json", report::case_study_json(report));
    report::write_file_atomic(out_dir / "phases.csv", report::case_study_csv(report));

    std::printf("%-12s %4s %6s %14s %10s %10s\n", "phase", "n", "theta", "interior", "effort", "output");
    for (const auto& p : report.phases) {
      std::printf("%-12s %4d %6.3f %14.6f %10.6f %10.4f\n", p.name.c_str(), p.config.team_size, p.mean_loyalty,
                  p.interior_effort, p.effort, p.output);
    }
    std::printf("strictly decreasing: %s\n", report.strictly_decreasing ? "yes" : "no");
    if (report.spearman_per_member) std::printf("spearman (per member): %.4f\n", *report.spearman_per_member);
    if (report.spearman_total) std::printf("spearman (team total): %.4f\n", *report.spearman_total);
    if (!report.spearman_per_member && !report.spearman_total) std::printf("rank correlation undefined\n");
    std::printf("rubric %d/%d (ordering %d/%d)\n", report.rubric.total, report.rubric.maximum,
                report.rubric.ordering_total, report.rubric.ordering_maximum);

    for (std::size_t i = 0; i < modifiers.size(); ++i) {
      const auto cf = run_counterfactual(s, modifiers[i], settings);
      const auto name = "counterfactual_" + std::to_string(i + 1) + "_" + to_string(cf.modifier.kind) + ".json";
      report::write_file_atomic(out_dir / name, report::counterfactual_json(cf));
      std::printf("%s %g: %s -> %s\n", to_string(cf.modifier.kind).c_str(), cf.modifier.magnitude,
                  cf.expectation.c_str(), cf.expectation_met ? "met" : "not met");
      for (const auto& p : cf.phases) {
        if (!p.modified) continue;
        std::printf("  %-12s effort %+8.2f%%  interior %+8.2f%%  output %+8.2f%%\n", p.name.c_str(),
                    p.effort_change_pct, p.interior_effort_change_pct, p.output_change_pct);
      }
    }
    for (const auto& p : report.phases) {
      if (!p.converged) throw ConvergenceFailure("phase '" + p.name + "' did not converge");
    }
  }
};

// ---- synergy ----------------------------------------------------------------

struct SynergyCommand {
  ModelFlags model;
  SolverFlags solver;
  double loyalty = 0.9;
  std::optional<fs::path> json_out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("synergy", "Decompose effort into mechanism contributions");
    model.add(cmd);
    solver.add(cmd);
    cmd->add_option("--theta", loyalty, "Loyalty")->capture_default_str();
    cmd->add_option("--json", json_out, "Write the decomposition JSON to this file");
    cmd->callback([this] { run(); });
  }

  void run() {
    const auto config = model.config();
    const auto mech = model.mech();
    validate_loyalty(loyalty);
    const auto r = synergy_analysis(config, loyalty, mech, solver.settings());
    std::cout << report::synergy_table(r);
    if (json_out) report::write_file_atomic(*json_out, report::synergy_json(config, loyalty, mech, r));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team production with loyalty: equilibrium solver and experiment harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "teamlab 1.0.0");

  SolveCommand solve;
  SweepCommand sweep;
  RobustnessCommand robustness;
  DynamicsCommand dynamics;
  CaseStudyCommand case_study;
  SynergyCommand synergy;
  solve.add(app);
  sweep.add(app);
  robustness.add(app);
  dynamics.add(app);
  case_study.add(app);
  synergy.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioParseError& e) {
    std::cerr << "scenario parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioSchemaError& e) {
    std::cerr << "scenario schema error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ScenarioInvariantError& e) {
    std::cerr << "scenario invariant error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
