#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "teamlab/extended.hpp"
#include "teamlab/model.hpp"
#include "teamlab/translation.hpp"

namespace teamlab {

inline constexpr int kScenarioSchemaVersion = 1;

/// The file is not well-formed JSON (or is empty).
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field is missing, has the wrong type, or is not part of the schema.
class ScenarioSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The document is well-typed but a value breaks a model invariant.
class ScenarioInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExplicitLoyalty {
  LoyaltyProfile profile;
  std::vector<std::string> member_ids;  // optional; empty or one per member

  bool operator==(const ExplicitLoyalty&) const = default;
};

struct FactorLoyalty {
  FactorWeights weights;
  std::vector<MemberFactors> members;

  bool operator==(const FactorLoyalty&) const = default;
};

/// Partial TeamConfig; unset fields inherit from the scenario config.
struct ConfigOverrides {
  std::optional<double> productivity;
  std::optional<double> returns_exponent;
  std::optional<double> effort_cost;
  std::optional<int> team_size;
  std::optional<double> effort_cap;

  TeamConfig apply(TeamConfig base) const;
  bool operator==(const ConfigOverrides&) const = default;
};

struct Phase {
  std::string name;
  ConfigOverrides overrides;
  double mean_loyalty = 0.0;
  int expected_rank = 0;  // 1 = lowest expected effort
  std::string pattern;    // qualitative label of the observed pattern
  std::optional<double> reference_effort;
  std::optional<double> reference_cohesion;

  bool operator==(const Phase&) const = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  std::string description;
  TeamConfig config;
  std::variant<MechanismStrengths, ExtendedStrengths> mechanisms;
  std::variant<ExplicitLoyalty, FactorLoyalty> loyalty;
  std::vector<DependencyRecord> dependencies;
  std::vector<Phase> phases;

  /// Loyalty per member in member order.
  LoyaltyProfile loyalty_profile() const;
  /// Member ids in member order ("m1".."mn" when the scenario gives none).
  std::vector<std::string> member_ids() const;
  /// Consolidated strengths; throws ValidationError for extended scenarios.
  const MechanismStrengths& consolidated() const;

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

/// Parses and validates a scenario document. Error messages carry line/column for
/// parse errors and the JSON path for schema and invariant errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

/// Serialises with a stable key order; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace teamlab
