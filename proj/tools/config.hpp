#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ipd/engine.hpp"
#include "ipd/strategy.hpp"

namespace ipd::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ZdTarget {
  std::string strategy;
  double slope;
  double intercept;
};

/// Fully resolved run configuration. Defaults reproduce the reference
/// tournament: 200 turns, 5 iterations, p_exp 0.1, standard payoffs, the
/// nine library strategies plus PREDICTOR.
struct RunConfig {
  std::string command;
  std::vector<std::string> roster;
  std::vector<MemoryOneStrategy> custom;
  std::map<std::string, InitialPolicy> initial_overrides;
  std::uint32_t n_turns = 200;
  std::uint32_t n_iter = 5;
  double p_exp = 0.1;
  std::array<double, 4> payoffs{3.0, 0.0, 5.0, 1.0};  ///< R, S, T, P
  bool randomize_initial = false;
  std::uint64_t seed = 1;
  std::string out = "out";
  bool trace = false;
  std::uint32_t window = 5;
  std::vector<double> grid;
  std::string match_a;
  std::string match_b;
  std::string subject = "PREDICTOR";
  std::vector<ZdTarget> zd;

  PayoffMatrix payoff_matrix() const;
  MatchConfig match_config() const;
  /// Resolves a roster name: custom strategies first, then PREDICTOR, then
  /// the library (with any initial-policy override applied).
  Player resolve(const std::string& name) const;
  std::vector<Player> players() const;
};

/// Command-line values; set fields override the file.
struct FlagOverrides {
  std::optional<std::uint32_t> turns;
  std::optional<std::uint32_t> iters;
  std::optional<double> p_exp;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> roster;    ///< comma separated
  std::optional<bool> randomize_initial;
  std::optional<std::string> payoffs;   ///< "R,S,T,P"
  std::optional<std::string> out;
  std::optional<bool> trace;
  std::optional<std::uint32_t> window;
  std::optional<std::string> grid;      ///< comma separated
  std::optional<std::string> match_a;
  std::optional<std::string> match_b;
  std::optional<std::string> subject;
};

/// Reads a JSON config. A file whose first line is "# config: {...}" (any
/// output file of this tool) is accepted and its recorded config used.
nlohmann::json load_config_document(const std::filesystem::path& file);

/// Validates and resolves a config document. Errors name the offending key.
RunConfig config_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const RunConfig& cfg);

/// File (optional) overlaid with flags, then validated.
RunConfig parse_config(const std::optional<std::filesystem::path>& file, const FlagOverrides& flags,
                       const std::string& command = {});

}  // namespace ipd::cli
