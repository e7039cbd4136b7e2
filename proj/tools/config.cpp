#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ipd/predictor.hpp"

namespace ipd::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kDefaultRoster{"PREDICTOR", "RANDOM", "ZDGTFT-2",   "TFT",  "WSLS",
                                              "ALLD",      "ZDEXTORT-2", "JOSS", "GTFT", "ALLC"};

const std::set<std::string> kKnownKeys{
    "command", "roster", "strategies", "initial_policies", "n_turns", "n_iter", "p_exp", "payoffs",
    "randomize_initial", "seed", "out", "trace", "window", "grid", "match", "subject", "zd"};

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    fail(key, "has the wrong type");
  }
}

double number_at(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "must be a number");
  return v.get<double>();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

double parse_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) fail(key, "'" + text + "' is not a number");
  return v;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part, key));
  return out;
}

MemoryOneStrategy parse_custom(const json& entry, std::size_t i) {
  const std::string key = "strategies[" + std::to_string(i) + "]";
  if (!entry.is_object()) fail(key, "must be an object with name, coop and initial");
  if (!entry.contains("name") || !entry["name"].is_string()) fail(key + ".name", "missing or not a string");
  const auto name = entry["name"].get<std::string>();
  if (name == "PREDICTOR") fail(key + ".name", "PREDICTOR is reserved");
  if (!entry.contains("coop") || !entry["coop"].is_array() || entry["coop"].size() != 4) {
    fail(key + ".coop", "must be an array of four probabilities");
  }
  CoopVector coop{};
  for (std::size_t k = 0; k < 4; ++k) coop[k] = number_at(entry["coop"][k], key + ".coop");
  InitialPolicy initial = InitialPolicy::AlwaysC;
  if (entry.contains("initial")) {
    try {
      initial = parse_initial_policy(entry["initial"].get<std::string>());
    } catch (const std::exception& e) {
      fail(key + ".initial", e.what());
    }
  }
  try {
    return make_strategy(name, coop, initial);
  } catch (const InvalidStrategyError& e) {
    fail(key + ".coop", e.what());
  }
}

}  // namespace

PayoffMatrix RunConfig::payoff_matrix() const {
  return PayoffMatrix::from_doubles(payoffs[0], payoffs[1], payoffs[2], payoffs[3]);
}

MatchConfig RunConfig::match_config() const {
  MatchConfig mc;
  mc.n_turns = n_turns;
  mc.payoff = payoff_matrix();
  mc.randomize_opponent_initial = randomize_initial;
  mc.seed = seed;
  return mc;
}

Player RunConfig::resolve(const std::string& name) const {
  for (const auto& s : custom) {
    if (s.name == name) return strategy_player(s);
  }
  if (name == "PREDICTOR") return predictor_player(p_exp);
  MemoryOneStrategy s = builtin(name);
  if (auto it = initial_overrides.find(s.name); it != initial_overrides.end()) s.initial = it->second;
  return strategy_player(std::move(s));
}

std::vector<Player> RunConfig::players() const {
  std::vector<Player> out;
  for (const auto& n : roster) out.push_back(resolve(n));
  return out;
}

nlohmann::json load_config_document(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("config: cannot open '" + file.string() + "'");
  std::string first;
  std::getline(in, first);
  const std::string marker = "# config: ";
  try {
    if (first.rfind(marker, 0) == 0) return json::parse(first.substr(marker.size()));
    std::stringstream rest;
    rest << first << '\n' << in.rdbuf();
    return json::parse(rest.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + file.string() + "' is not valid JSON (" + e.what() + ")");
  }
}

RunConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (!kKnownKeys.count(key)) fail(key, "unknown key");
  }

  RunConfig cfg;
  if (doc.contains("command")) cfg.command = get_as<std::string>(doc, "command");

  if (doc.contains("strategies")) {
    if (!doc["strategies"].is_array()) fail("strategies", "must be an array");
    for (std::size_t i = 0; i < doc["strategies"].size(); ++i) {
      auto s = parse_custom(doc["strategies"][i], i);
      if (is_builtin(s.name)) fail("strategies[" + std::to_string(i) + "].name", "'" + s.name + "' shadows a library strategy");
      for (const auto& prev : cfg.custom) {
        if (prev.name == s.name) fail("strategies[" + std::to_string(i) + "].name", "duplicate name '" + s.name + "'");
      }
      cfg.custom.push_back(std::move(s));
    }
  }

  if (doc.contains("initial_policies")) {
    if (!doc["initial_policies"].is_object()) fail("initial_policies", "must be an object");
    for (const auto& [name, value] : doc["initial_policies"].items()) {
      const std::string key = "initial_policies." + name;
      if (!is_builtin(name)) fail(key, "unknown strategy '" + name + "'");
      if (!value.is_string()) fail(key, "must be C, D or random");
      try {
        cfg.initial_overrides[builtin(name).name] = parse_initial_policy(value.get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(key, e.what());
      }
    }
  }

  if (doc.contains("n_turns")) {
    const auto v = get_as<std::int64_t>(doc, "n_turns");
    if (v < 1 || v > 10'000'000) fail("n_turns", "must be between 1 and 10000000");
    cfg.n_turns = static_cast<std::uint32_t>(v);
  }
  if (doc.contains("n_iter")) {
    const auto v = get_as<std::int64_t>(doc, "n_iter");
    if (v < 1 || v > 100'000) fail("n_iter", "must be between 1 and 100000");
    cfg.n_iter = static_cast<std::uint32_t>(v);
  }
  if (doc.contains("p_exp")) {
    cfg.p_exp = number_at(doc["p_exp"], "p_exp");
    if (!(cfg.p_exp >= 0.0 && cfg.p_exp <= 1.0)) fail("p_exp", "must lie in [0, 1]");
  }
  if (doc.contains("payoffs")) {
    const auto& p = doc["payoffs"];
    if (p.is_object()) {
      const std::array<const char*, 4> names{"R", "S", "T", "P"};
      for (std::size_t k = 0; k < 4; ++k) {
        if (!p.contains(names[k])) fail(std::string("payoffs.") + names[k], "missing");
        cfg.payoffs[k] = number_at(p[names[k]], std::string("payoffs.") + names[k]);
      }
    } else if (p.is_array() && p.size() == 4) {
      for (std::size_t k = 0; k < 4; ++k) cfg.payoffs[k] = number_at(p[k], "payoffs");
    } else {
      fail("payoffs", "must be {R, S, T, P} or a four-element array");
    }
    const auto report = validate(cfg.payoff_matrix());
    if (!report.ok()) fail("payoffs", report.describe());
  }
  if (doc.contains("randomize_initial")) cfg.randomize_initial = get_as<bool>(doc, "randomize_initial");
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("out")) cfg.out = get_as<std::string>(doc, "out");
  if (doc.contains("trace")) cfg.trace = get_as<bool>(doc, "trace");
  if (doc.contains("window")) {
    const auto v = get_as<std::int64_t>(doc, "window");
    if (v < 1) fail("window", "must be at least 1");
    cfg.window = static_cast<std::uint32_t>(v);
  }

  cfg.grid = default_grid();
  if (doc.contains("grid")) {
    if (!doc["grid"].is_array() || doc["grid"].empty()) fail("grid", "must be a non-empty array");
    cfg.grid.clear();
    for (const auto& v : doc["grid"]) {
      const double g = number_at(v, "grid");
      if (!(g >= 0.0 && g <= 1.0)) fail("grid", "values must lie in [0, 1]");
      cfg.grid.push_back(g);
    }
  }

  cfg.roster = kDefaultRoster;
  if (doc.contains("roster")) {
    if (!doc["roster"].is_array() || doc["roster"].empty()) fail("roster", "must be a non-empty array of names");
    cfg.roster.clear();
    for (const auto& v : doc["roster"]) {
      if (!v.is_string()) fail("roster", "entries must be strategy names");
      cfg.roster.push_back(v.get<std::string>());
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cfg.roster.size(); ++i) {
    const std::string key = "roster[" + std::to_string(i) + "]";
    try {
      const Player p = cfg.resolve(cfg.roster[i]);
      if (!seen.insert(p.name).second) fail(key, "duplicate entry '" + p.name + "'");
      cfg.roster[i] = p.name;
    } catch (const UnknownStrategyError& e) {
      fail(key, e.what());
    }
  }

  if (doc.contains("match")) {
    const auto& m = doc["match"];
    if (!m.is_object()) fail("match", "must be an object with a and b");
    for (const char* seat : {"a", "b"}) {
      if (!m.contains(seat)) continue;
      const std::string key = std::string("match.") + seat;
      if (!m[seat].is_string()) fail(key, "must be a strategy name");
      const auto name = m[seat].get<std::string>();
      try {
        (seat[0] == 'a' ? cfg.match_a : cfg.match_b) = cfg.resolve(name).name;
      } catch (const UnknownStrategyError& e) {
        fail(key, e.what());
      }
    }
  }

  if (doc.contains("subject")) cfg.subject = get_as<std::string>(doc, "subject");

  cfg.zd = {{"ZDGTFT-2", 2.0, -3.0}, {"ZDEXTORT-2", 2.0, -1.0}};
  if (doc.contains("zd")) {
    if (!doc["zd"].is_array()) fail("zd", "must be an array");
    cfg.zd.clear();
    for (std::size_t i = 0; i < doc["zd"].size(); ++i) {
      const auto& z = doc["zd"][i];
      const std::string key = "zd[" + std::to_string(i) + "]";
      if (!z.is_object() || !z.contains("strategy") || !z.contains("slope") || !z.contains("intercept")) {
        fail(key, "must have strategy, slope and intercept");
      }
      ZdTarget t{z["strategy"].is_string() ? z["strategy"].get<std::string>() : "",
                 number_at(z["slope"], key + ".slope"), number_at(z["intercept"], key + ".intercept")};
      try {
        const Player p = cfg.resolve(t.strategy);
        if (p.is_predictor()) fail(key + ".strategy", "must be a memory-1 strategy");
        t.strategy = p.name;
      } catch (const UnknownStrategyError& e) {
        fail(key + ".strategy", e.what());
      }
      cfg.zd.push_back(std::move(t));
    }
  }
  return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  json doc;
  doc["command"] = cfg.command;
  doc["roster"] = cfg.roster;
  json custom = json::array();
  for (const auto& s : cfg.custom) {
    custom.push_back({{"name", s.name},
                      {"coop", std::vector<double>(s.coop.begin(), s.coop.end())},
                      {"initial", std::string(to_string(s.initial))}});
  }
  doc["strategies"] = custom;
  json overrides = json::object();
  for (const auto& [name, policy] : cfg.initial_overrides) overrides[name] = std::string(to_string(policy));
  doc["initial_policies"] = overrides;
  doc["n_turns"] = cfg.n_turns;
  doc["n_iter"] = cfg.n_iter;
  doc["p_exp"] = cfg.p_exp;
  doc["payoffs"] = {{"R", cfg.payoffs[0]}, {"S", cfg.payoffs[1]}, {"T", cfg.payoffs[2]}, {"P", cfg.payoffs[3]}};
  doc["randomize_initial"] = cfg.randomize_initial;
  doc["seed"] = cfg.seed;
  doc["out"] = cfg.out;
  doc["trace"] = cfg.trace;
  doc["window"] = cfg.window;
  doc["grid"] = cfg.grid;
  json match = json::object();
  if (!cfg.match_a.empty()) match["a"] = cfg.match_a;
  if (!cfg.match_b.empty()) match["b"] = cfg.match_b;
  doc["match"] = match;
  doc["subject"] = cfg.subject;
  json zd = json::array();
  for (const auto& z : cfg.zd) zd.push_back({{"strategy", z.strategy}, {"slope", z.slope}, {"intercept", z.intercept}});
  doc["zd"] = zd;
  return doc;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& file, const FlagOverrides& flags,
                       const std::string& command) {
  json doc = file ? load_config_document(*file) : json::object();
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  if (!command.empty()) doc["command"] = command;
  if (flags.turns) doc["n_turns"] = *flags.turns;
  if (flags.iters) doc["n_iter"] = *flags.iters;
  if (flags.p_exp) doc["p_exp"] = *flags.p_exp;
  if (flags.seed) doc["seed"] = *flags.seed;
  if (flags.roster) doc["roster"] = split(*flags.roster, ',');
  if (flags.randomize_initial) doc["randomize_initial"] = *flags.randomize_initial;
  if (flags.payoffs) {
    const auto values = parse_numbers(*flags.payoffs, "payoffs");
    if (values.size() != 4) fail("payoffs", "expected four values R,S,T,P");
    doc["payoffs"] = {{"R", values[0]}, {"S", values[1]}, {"T", values[2]}, {"P", values[3]}};
  }
  if (flags.out) doc["out"] = *flags.out;
  if (flags.trace) doc["trace"] = *flags.trace;
  if (flags.window) doc["window"] = *flags.window;
  if (flags.grid) doc["grid"] = parse_numbers(*flags.grid, "grid");
  if (flags.match_a) doc["match"]["a"] = *flags.match_a;
  if (flags.match_b) doc["match"]["b"] = *flags.match_b;
  if (flags.subject) doc["subject"] = *flags.subject;
  return config_from_json(doc);
}

}  // namespace ipd::cli
