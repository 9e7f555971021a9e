#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "teamlab/report.hpp"

using namespace teamlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(report::format_number(0.1) == "0.1");
  CHECK(report::format_number(1.0 / 3.0) == "0.333333333");
  CHECK(report::format_number(12345678901.0) == "1.23456789e+10");
  CHECK(report::format_number(INFINITY) == "inf");
  CHECK(report::format_number(std::nan("")) == "");
}

TEST_CASE("atomic write") {
  const auto dir = fs::temp_directory_path() / "teamlab_report_test";
  fs::remove_all(dir);
  const auto target = dir / "nested" / "out.txt";
  report::write_file_atomic(target, "first\n");
  CHECK(slurp(target) == "first\n");
  report::write_file_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(target.parent_path())) ++files;
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("sweep outputs are deterministic") {
  GridSpec g;
  g.productivity = {20};
  g.returns_exponent = {0.5};
  g.effort_cost = {2.5, 3.0};
  g.team_size = {3, 5};
  const auto a = run_sweep(g, SweepOptions{1, 3, 200, {}});
  const auto b = run_sweep(g, SweepOptions{2, 3, 200, {}});
  const auto csv = report::sweep_csv(a);
  CHECK(csv == report::sweep_csv(b));
  CHECK(report::sweep_summary_json(a) == report::sweep_summary_json(b));
  CHECK(csv.rfind(report::sweep_csv_header(), 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == g.size() + 1);
}

TEST_CASE("equilibrium report") {
  TeamConfig cfg;
  const auto loyal = LoyaltyProfile::uniform(5, 0.0);
  const auto r = solve_tpe(cfg, MechanismStrengths{}, loyal);
  const auto json = report::equilibrium_json(cfg, MechanismStrengths{}, loyal, r, 0.128);
  CHECK(json.find("\"analytic_symmetric_effort\": 0.128") != std::string::npos);
  CHECK(json.find("\"config\"") < json.find("\"efforts\""));
  CHECK(report::equilibrium_table(loyal, r).find("converged yes") != std::string::npos);
}

TEST_CASE("trajectory csv") {
  DynamicsSettings s;
  s.periods = 2;
  const auto t = simulate_loyalty_evolution(TeamConfig{}, MechanismStrengths{}, LoyaltyProfile::uniform(5, 0.5), s);
  const auto csv = report::trajectory_csv(t);
  CHECK(csv.rfind("period,member,loyalty,effort,output\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + 3 * 5);
}
