#include "teamlab/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace teamlab {

using Json = nlohmann::ordered_json;

namespace {

// Walks a JSON document while tracking the path for diagnostics.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const Json& raw() const { return value_; }

  [[noreturn]] void schema_error(const std::string& what) const {
    throw ScenarioSchemaError(path_ + ": " + what);
  }

  const Node& require_object() const {
    if (!value_.is_object()) schema_error("expected an object");
    return *this;
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    require_object();
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : value_.items()) {
      if (!allowed.contains(key)) schema_error("unknown field '" + key + "'");
    }
  }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Node at(const char* key) const {
    require_object();
    if (!value_.contains(key)) schema_error("missing field '" + std::string(key) + "'");
    return Node(value_.at(key), path_ + "." + key);
  }

  std::optional<Node> maybe(const char* key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  std::vector<Node> elements() const {
    if (!value_.is_array()) schema_error("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::vector<std::pair<std::string, Node>> members() const {
    require_object();
    std::vector<std::pair<std::string, Node>> out;
    for (const auto& [key, v] : value_.items()) out.emplace_back(key, Node(v, path_ + "." + key));
    return out;
  }

  double number() const {
    if (!value_.is_number()) schema_error("expected a number");
    return value_.get<double>();
  }

  int integer() const {
    if (!value_.is_number_integer()) schema_error("expected an integer");
    return value_.get<int>();
  }

  std::string string() const {
    if (!value_.is_string()) schema_error("expected a string");
    return value_.get<std::string>();
  }

 private:
  const Json& value_;
  std::string path_;
};

// Runs a model validator and re-labels its failure with the document path.
template <typename Fn>
void check_invariant(const std::string& path, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    throw ScenarioInvariantError(path + ": " + e.what());
  }
}

TeamConfig read_config(const Node& node) {
  node.allow_only({"productivity", "returns_exponent", "effort_cost", "team_size", "effort_cap"});
  TeamConfig c;
  c.productivity = node.at("productivity").number();
  c.returns_exponent = node.at("returns_exponent").number();
  c.effort_cost = node.at("effort_cost").number();
  c.team_size = node.at("team_size").integer();
  c.effort_cap = node.at("effort_cap").number();
  check_invariant(node.path(), [&] { c.validate(); });
  return c;
}

ConfigOverrides read_overrides(const Node& node) {
  node.allow_only({"productivity", "returns_exponent", "effort_cost", "team_size", "effort_cap"});
  ConfigOverrides o;
  if (auto v = node.maybe("productivity")) o.productivity = v->number();
  if (auto v = node.maybe("returns_exponent")) o.returns_exponent = v->number();
  if (auto v = node.maybe("effort_cost")) o.effort_cost = v->number();
  if (auto v = node.maybe("team_size")) o.team_size = v->integer();
  if (auto v = node.maybe("effort_cap")) o.effort_cap = v->number();
  return o;
}

FactorWeights read_weights(const Node& node) {
  if (node.raw().is_string()) {
    const auto preset = node.string();
    if (preset == "human") return FactorWeights::human_default();
    if (preset == "agent") return FactorWeights::agent_default();
    node.schema_error("unknown weight preset '" + preset + "' (expected 'human' or 'agent')");
  }
  FactorWeights w;
  for (const auto& [name, value] : node.members()) w.weights.emplace_back(name, value.number());
  check_invariant(node.path(), [&] { w.validate(); });
  return w;
}

Json weights_to_json(const FactorWeights& w) {
  if (w == FactorWeights::human_default()) return "human";
  if (w == FactorWeights::agent_default()) return "agent";
  Json out = Json::object();
  for (const auto& [name, value] : w.weights) out[name] = value;
  return out;
}

Json config_to_json(const TeamConfig& c) {
  Json out;
  out["productivity"] = c.productivity;
  out["returns_exponent"] = c.returns_exponent;
  out["effort_cost"] = c.effort_cost;
  out["team_size"] = c.team_size;
  out["effort_cap"] = c.effort_cap;
  return out;
}

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

TeamConfig ConfigOverrides::apply(TeamConfig base) const {
  if (productivity) base.productivity = *productivity;
  if (returns_exponent) base.returns_exponent = *returns_exponent;
  if (effort_cost) base.effort_cost = *effort_cost;
  if (team_size) base.team_size = *team_size;
  if (effort_cap) base.effort_cap = *effort_cap;
  return base;
}

LoyaltyProfile Scenario::loyalty_profile() const {
  if (const auto* e = std::get_if<ExplicitLoyalty>(&loyalty)) return e->profile;
  const auto& f = std::get<FactorLoyalty>(loyalty);
  LoyaltyProfile out;
  for (const auto& m : f.members) out.values.push_back(assessed_loyalty(m, f.weights));
  return out;
}

std::vector<std::string> Scenario::member_ids() const {
  std::vector<std::string> ids;
  if (const auto* e = std::get_if<ExplicitLoyalty>(&loyalty)) {
    ids = e->member_ids;
  } else {
    for (const auto& m : std::get<FactorLoyalty>(loyalty).members) ids.push_back(m.member_id);
  }
  if (ids.empty()) {
    for (int i = 1; i <= config.team_size; ++i) ids.push_back("m" + std::to_string(i));
  }
  return ids;
}

const MechanismStrengths& Scenario::consolidated() const {
  if (const auto* m = std::get_if<MechanismStrengths>(&mechanisms)) return *m;
  throw ValidationError("scenario '" + name + "' uses extended mechanisms; consolidated strengths required");
}

void Scenario::validate() const {
  if (schema_version != kScenarioSchemaVersion) {
    throw ScenarioSchemaError("$.schema_version: unsupported version " + std::to_string(schema_version));
  }
  if (name.empty()) throw ScenarioSchemaError("$.name: must be non-empty");
  check_invariant("$.config", [&] { config.validate(); });
  check_invariant("$.mechanisms", [&] {
    std::visit([](const auto& m) { m.validate(); }, mechanisms);
  });
  check_invariant("$.loyalty", [&] {
    if (const auto* e = std::get_if<ExplicitLoyalty>(&loyalty)) {
      e->profile.validate(config);
      if (!e->member_ids.empty() && e->member_ids.size() != e->profile.values.size()) {
        throw ValidationError("member_ids must have one entry per member");
      }
    } else {
      const auto& f = std::get<FactorLoyalty>(loyalty);
      f.weights.validate();
      if (f.members.size() != static_cast<std::size_t>(config.team_size)) {
        throw ValidationError("factor table has " + std::to_string(f.members.size()) + " members, team size is " +
                              std::to_string(config.team_size));
      }
      std::set<std::string> ids;
      for (const auto& m : f.members) {
        if (!ids.insert(m.member_id).second) throw ValidationError("duplicate member id '" + m.member_id + "'");
        assessed_loyalty(m, f.weights);
      }
    }
  });
  if (!dependencies.empty()) check_invariant("$.dependencies", [&] { dependency_coefficients(dependencies); });
  check_invariant("$.phases", [&] {
    std::vector<int> ranks;
    for (const auto& p : phases) {
      p.overrides.apply(config).validate();
      validate_loyalty(p.mean_loyalty);
      ranks.push_back(p.expected_rank);
    }
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (ranks[i] != static_cast<int>(i) + 1) throw ValidationError("expected ranks must be a permutation of 1..k");
    }
  });
}

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ScenarioParseError("parse error at " + position_of(text, e.byte) + ": " + e.what());
  }
  const Node root(doc, "$");
  root.allow_only({"schema_version", "name", "description", "config", "mechanisms", "extended_mechanisms",
                   "loyalty", "dependencies", "phases"});

  Scenario s;
  s.schema_version = root.at("schema_version").integer();
  if (s.schema_version != kScenarioSchemaVersion) {
    throw ScenarioSchemaError("$.schema_version: unsupported version " + std::to_string(s.schema_version));
  }
  s.name = root.at("name").string();
  if (auto d = root.maybe("description")) s.description = d->string();
  s.config = read_config(root.at("config"));

  const bool plain = root.has("mechanisms");
  const bool extended = root.has("extended_mechanisms");
  if (plain == extended) root.schema_error("exactly one of 'mechanisms' or 'extended_mechanisms' is required");
  if (plain) {
    const auto node = root.at("mechanisms");
    node.allow_only({"loyalty_benefit", "cost_tolerance"});
    s.mechanisms = MechanismStrengths{node.at("loyalty_benefit").number(), node.at("cost_tolerance").number()};
  } else {
    const auto node = root.at("extended_mechanisms");
    node.allow_only({"internalization", "warm_glow", "cost_tolerance", "guilt"});
    s.mechanisms = ExtendedStrengths{node.at("internalization").number(), node.at("warm_glow").number(),
                                     node.at("cost_tolerance").number(), node.at("guilt").number()};
  }

  const auto loyalty = root.at("loyalty");
  loyalty.allow_only({"profile", "member_ids", "factor_weights", "members"});
  const bool explicit_source = loyalty.has("profile");
  const bool factor_source = loyalty.has("factor_weights") || loyalty.has("members");
  if (explicit_source == factor_source) {
    loyalty.schema_error("exactly one loyalty source is required: 'profile' or 'factor_weights' + 'members'");
  }
  if (explicit_source) {
    ExplicitLoyalty e;
    for (const auto& v : loyalty.at("profile").elements()) e.profile.values.push_back(v.number());
    if (auto ids = loyalty.maybe("member_ids")) {
      for (const auto& v : ids->elements()) e.member_ids.push_back(v.string());
    }
    s.loyalty = std::move(e);
  } else {
    if (loyalty.has("member_ids")) loyalty.schema_error("'member_ids' is only valid with 'profile'");
    FactorLoyalty f;
    f.weights = read_weights(loyalty.at("factor_weights"));
    for (const auto& m : loyalty.at("members").elements()) {
      m.allow_only({"id", "scores", "override"});
      MemberFactors mf;
      mf.member_id = m.at("id").string();
      for (const auto& [factor, score] : m.at("scores").members()) mf.scores.emplace_back(factor, score.number());
      if (auto o = m.maybe("override")) mf.loyalty_override = o->number();
      f.members.push_back(std::move(mf));
    }
    s.loyalty = std::move(f);
  }

  if (auto deps = root.maybe("dependencies")) {
    for (const auto& d : deps->elements()) {
      d.allow_only({"dependee", "dependum", "criticality"});
      s.dependencies.push_back(
          DependencyRecord{d.at("dependee").string(), d.at("dependum").string(), d.at("criticality").number()});
    }
  }

  if (auto phases = root.maybe("phases")) {
    for (const auto& p : phases->elements()) {
      p.allow_only({"name", "overrides", "mean_loyalty", "expected_rank", "pattern", "reference_effort",
                    "reference_cohesion"});
      Phase ph;
      ph.name = p.at("name").string();
      if (auto o = p.maybe("overrides")) ph.overrides = read_overrides(*o);
      ph.mean_loyalty = p.at("mean_loyalty").number();
      ph.expected_rank = p.at("expected_rank").integer();
      if (auto v = p.maybe("pattern")) ph.pattern = v->string();
      if (auto v = p.maybe("reference_effort")) ph.reference_effort = v->number();
      if (auto v = p.maybe("reference_cohesion")) ph.reference_cohesion = v->number();
      s.phases.push_back(std::move(ph));
    }
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ScenarioParseError& e) {
    throw ScenarioParseError(path.string() + ": " + e.what());
  } catch (const ScenarioSchemaError& e) {
    throw ScenarioSchemaError(path.string() + ": " + e.what());
  } catch (const ScenarioInvariantError& e) {
    throw ScenarioInvariantError(path.string() + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  Json out;
  out["schema_version"] = s.schema_version;
  out["name"] = s.name;
  if (!s.description.empty()) out["description"] = s.description;
  out["config"] = config_to_json(s.config);
  if (const auto* m = std::get_if<MechanismStrengths>(&s.mechanisms)) {
    out["mechanisms"] = {{"loyalty_benefit", m->loyalty_benefit}, {"cost_tolerance", m->cost_tolerance}};
  } else {
    const auto& e = std::get<ExtendedStrengths>(s.mechanisms);
    out["extended_mechanisms"] = {{"internalization", e.internalization},
                                  {"warm_glow", e.warm_glow},
                                  {"cost_tolerance", e.cost_tolerance},
                                  {"guilt", e.guilt}};
  }
  Json loyalty = Json::object();
  if (const auto* e = std::get_if<ExplicitLoyalty>(&s.loyalty)) {
    loyalty["profile"] = e->profile.values;
    if (!e->member_ids.empty()) loyalty["member_ids"] = e->member_ids;
  } else {
    const auto& f = std::get<FactorLoyalty>(s.loyalty);
    loyalty["factor_weights"] = weights_to_json(f.weights);
    Json members = Json::array();
    for (const auto& m : f.members) {
      Json jm;
      jm["id"] = m.member_id;
      Json scores = Json::object();
      for (const auto& [name, v] : m.scores) scores[name] = v;
      jm["scores"] = scores;
      if (m.loyalty_override) jm["override"] = *m.loyalty_override;
      members.push_back(jm);
    }
    loyalty["members"] = members;
  }
  out["loyalty"] = loyalty;
  if (!s.dependencies.empty()) {
    Json deps = Json::array();
    for (const auto& d : s.dependencies) {
      deps.push_back({{"dependee", d.dependee}, {"dependum", d.dependum}, {"criticality", d.criticality}});
    }
    out["dependencies"] = deps;
  }
  if (!s.phases.empty()) {
    Json phases = Json::array();
    for (const auto& p : s.phases) {
      Json jp;
      jp["name"] = p.name;
      Json o = Json::object();
      if (p.overrides.productivity) o["productivity"] = *p.overrides.productivity;
      if (p.overrides.returns_exponent) o["returns_exponent"] = *p.overrides.returns_exponent;
      if (p.overrides.effort_cost) o["effort_cost"] = *p.overrides.effort_cost;
      if (p.overrides.team_size) o["team_size"] = *p.overrides.team_size;
      if (p.overrides.effort_cap) o["effort_cap"] = *p.overrides.effort_cap;
      if (!o.empty()) jp["overrides"] = o;
      jp["mean_loyalty"] = p.mean_loyalty;
      jp["expected_rank"] = p.expected_rank;
      if (!p.pattern.empty()) jp["pattern"] = p.pattern;
      if (p.reference_effort) jp["reference_effort"] = *p.reference_effort;
      if (p.reference_cohesion) jp["reference_cohesion"] = *p.reference_cohesion;
      phases.push_back(jp);
    }
    out["phases"] = phases;
  }
  return out.dump(2) + "\n";
}

}  // namespace teamlab
