#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ipd/game.hpp"
#include "ipd/predictor.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

struct PredictorSpec {
  double p_exp = 0.1;
  friend bool operator==(const PredictorSpec&, const PredictorSpec&) = default;
};

/// A roster entry: either a fixed memory-1 strategy or a learning predictor.
struct Player {
  std::string name;
  std::variant<MemoryOneStrategy, PredictorSpec> kind;

  bool is_predictor() const { return std::holds_alternative<PredictorSpec>(kind); }
  friend bool operator==(const Player&, const Player&) = default;
};

Player strategy_player(MemoryOneStrategy s);
Player predictor_player(double p_exp, std::string name = "PREDICTOR");

struct MatchConfig {
  std::uint32_t n_turns = 200;
  PayoffMatrix payoff;
  /// Replace the first move of memory-1 players facing a predictor by a coin flip.
  bool randomize_opponent_initial = false;
  std::uint64_t seed = 0;
};

struct TurnRecord {
  Action a;
  Action b;
  double payoff_a;
  double payoff_b;
};

struct WindowPoint {
  std::uint32_t turn;  ///< last turn of the window, 1-based
  double mean_a;
  double mean_b;
};

struct MatchRecord {
  std::string name_a;
  std::string name_b;
  std::vector<TurnRecord> turns;
  double mean_a = 0.0;
  double mean_b = 0.0;
  /// Per-window block means, window 5.
  std::vector<WindowPoint> windowed;
  /// Final opponent model of each seat that is a predictor.
  std::optional<OpponentModel> model_a;
  std::optional<OpponentModel> model_b;
};

/// Block means of each player over consecutive windows of `window` turns.
/// A trailing partial window is reported over the turns it covers.
std::vector<WindowPoint> windowed_means(const MatchRecord& record, std::uint32_t window);

/// Plays one match. Each seat draws from its own stream derived from cfg.seed.
MatchRecord play_match(const Player& a, const Player& b, const MatchConfig& cfg);

struct PlayedMatch {
  std::size_t a;  ///< roster position of seat a
  std::size_t b;  ///< roster position of seat b (a <= b)
  std::uint32_t iteration;
  MatchRecord record;
};

struct TournamentResult {
  std::vector<Player> roster;  ///< shuffled order; all indices refer to it
  /// payoff_matrix[i][j]: mean payoff of i against j over the iterations.
  std::vector<std::vector<double>> payoff_matrix;
  std::vector<double> average;
  std::vector<double> std_error;
  std::vector<int> wins;
  std::vector<int> ties;
  /// Roster indices by descending average payoff.
  std::vector<std::size_t> ranking;
  std::vector<PlayedMatch> matches;

  /// Roster position of `name`; throws std::out_of_range.
  std::size_t index_of(const std::string& name) const;
  /// 1-based place of roster entry `i`.
  std::size_t place_of(std::size_t i) const;
};

/// Seed of one match: a stable mix of the master seed, both roster
/// positions (lower first) and the iteration.
std::uint64_t match_seed(std::uint64_t master_seed, std::size_t i, std::size_t j, std::uint32_t iteration);

/// Fisher-Yates shuffle of the roster driven by the master seed.
std::vector<Player> shuffled_roster(std::vector<Player> roster, std::uint64_t master_seed);

/// Every unordered pair, self-pairs included, plays `n_iter` matches.
/// cfg.seed is ignored; match seeds come from `master_seed`. `threads` = 0
/// uses the hardware concurrency. Results do not depend on thread count.
TournamentResult run_round_robin(const std::vector<Player>& roster, const MatchConfig& cfg,
                                 std::uint32_t n_iter, std::uint64_t master_seed,
                                 unsigned threads = 0);

struct SeriesPoint {
  std::uint32_t turn;
  double mean;
};

/// Subject's cumulative mean payoff through turns window, 2*window, ...,
/// averaged over all of its matches. Throws std::out_of_range for an unknown
/// subject.
std::vector<SeriesPoint> time_series(const TournamentResult& result, const std::string& subject,
                                     std::uint32_t window = 5);

}  // namespace ipd
