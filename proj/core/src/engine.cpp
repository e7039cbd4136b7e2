#include "ipd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"

namespace ipd {
namespace {

// One seat of a running match.
class Seat {
 public:
  Seat(const Player& player, std::uint32_t n_turns, std::uint64_t seed)
      : player_(player), rng_(seed) {
    if (const auto* spec = std::get_if<PredictorSpec>(&player.kind)) {
      state_ = reset(n_turns, spec->p_exp);
    }
  }

  Action first_move(bool randomize_override, const PayoffMatrix& pm) {
    if (state_) return act(*state_, rng_, pm);
    return initial_action(std::get<MemoryOneStrategy>(player_.kind), rng_, randomize_override);
  }

  Action next_move(JointOutcome prev, const PayoffMatrix& pm) {
    if (state_) return act(*state_, rng_, pm);
    return next_action(std::get<MemoryOneStrategy>(player_.kind), prev, rng_);
  }

  void observe_turn(Action own, Action opp) {
    if (state_) state_ = observe(std::move(*state_), own, opp);
  }

  std::optional<OpponentModel> final_model() const {
    if (state_) return state_->model;
    return std::nullopt;
  }

 private:
  const Player& player_;
  RngStream rng_;
  std::optional<PredictorState> state_;
};

}  // namespace

Player strategy_player(MemoryOneStrategy s) {
  std::string name = s.name;
  return Player{std::move(name), std::move(s)};
}

Player predictor_player(double p_exp, std::string name) {
  return Player{std::move(name), PredictorSpec{p_exp}};
}

std::vector<WindowPoint> windowed_means(const MatchRecord& record, std::uint32_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  std::vector<WindowPoint> out;
  const auto n = static_cast<std::uint32_t>(record.turns.size());
  for (std::uint32_t start = 0; start < n; start += window) {
    const std::uint32_t stop = std::min(n, start + window);
    double sa = 0.0, sb = 0.0;
    for (std::uint32_t t = start; t < stop; ++t) {
      sa += record.turns[t].payoff_a;
      sb += record.turns[t].payoff_b;
    }
    const double len = stop - start;
    out.push_back({stop, sa / len, sb / len});
  }
  return out;
}

MatchRecord play_match(const Player& a, const Player& b, const MatchConfig& cfg) {
  if (cfg.n_turns == 0) throw std::invalid_argument("n_turns must be at least 1");
  const PayoffMatrix& pm = cfg.payoff;
  Seat seat_a(a, cfg.n_turns, derive_seed(cfg.seed, {0}));
  Seat seat_b(b, cfg.n_turns, derive_seed(cfg.seed, {1}));

  MatchRecord rec;
  rec.name_a = a.name;
  rec.name_b = b.name;
  rec.turns.reserve(cfg.n_turns);

  // Exact per-outcome payoffs as doubles, indexed by outcome in a's orientation.
  std::array<std::pair<double, double>, 4> table;
  for (auto o : kAllOutcomes) {
    auto p = payoff(pm, o);
    table[o.index()] = {p.self.to_double(), p.opponent.to_double()};
  }

  double sum_a = 0.0, sum_b = 0.0;
  JointOutcome prev{};
  for (std::uint32_t t = 0; t < cfg.n_turns; ++t) {
    Action move_a, move_b;
    if (t == 0) {
      move_a = seat_a.first_move(cfg.randomize_opponent_initial && b.is_predictor(), pm);
      move_b = seat_b.first_move(cfg.randomize_opponent_initial && a.is_predictor(), pm);
    } else {
      move_a = seat_a.next_move(prev, pm);
      move_b = seat_b.next_move(prev.mirrored(), pm);
    }
    prev = JointOutcome{move_a, move_b};
    const auto [pa, pb] = table[prev.index()];
    rec.turns.push_back({move_a, move_b, pa, pb});
    sum_a += pa;
    sum_b += pb;
    seat_a.observe_turn(move_a, move_b);
    seat_b.observe_turn(move_b, move_a);
  }
  rec.mean_a = sum_a / cfg.n_turns;
  rec.mean_b = sum_b / cfg.n_turns;
  rec.windowed = windowed_means(rec, 5);
  rec.model_a = seat_a.final_model();
  rec.model_b = seat_b.final_model();
  return rec;
}

std::size_t TournamentResult::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < roster.size(); ++i) {
    if (roster[i].name == name) return i;
  }
  throw std::out_of_range("'" + name + "' is not in the tournament roster");
}

std::size_t TournamentResult::place_of(std::size_t i) const {
  auto it = std::find(ranking.begin(), ranking.end(), i);
  if (it == ranking.end()) throw std::out_of_range("roster index out of range");
  return static_cast<std::size_t>(it - ranking.begin()) + 1;
}

std::uint64_t match_seed(std::uint64_t master_seed, std::size_t i, std::size_t j, std::uint32_t iteration) {
  const auto lo = std::min(i, j), hi = std::max(i, j);
  return derive_seed(master_seed, {0x6d61746368ULL, lo, hi, iteration});
}

std::vector<Player> shuffled_roster(std::vector<Player> roster, std::uint64_t master_seed) {
  RngStream rng(derive_seed(master_seed, {0x726f73746572ULL}));
  for (std::size_t k = roster.size(); k > 1; --k) {
    std::swap(roster[k - 1], roster[rng.index(k)]);
  }
  return roster;
}

TournamentResult run_round_robin(const std::vector<Player>& roster, const MatchConfig& cfg,
                                 std::uint32_t n_iter, std::uint64_t master_seed, unsigned threads) {
  if (roster.empty()) throw std::invalid_argument("roster must not be empty");
  if (n_iter == 0) throw std::invalid_argument("n_iter must be at least 1");

  TournamentResult res;
  res.roster = shuffled_roster(roster, master_seed);
  const std::size_t n = res.roster.size();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::uint32_t it = 0; it < n_iter; ++it) res.matches.push_back({i, j, it, {}});
    }
  }
  detail::parallel_for(res.matches.size(), threads, [&](std::size_t k) {
    auto& m = res.matches[k];
    MatchConfig mc = cfg;
    mc.seed = match_seed(master_seed, m.a, m.b, m.iteration);
    m.record = play_match(res.roster[m.a], res.roster[m.b], mc);
  });

  // Deterministic reduction in match order.
  std::vector<std::vector<double>> sums(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> samples(n);
  for (const auto& m : res.matches) {
    if (m.a == m.b) {
      const double both = 0.5 * (m.record.mean_a + m.record.mean_b);
      sums[m.a][m.a] += both;
      samples[m.a].push_back(both);
    } else {
      sums[m.a][m.b] += m.record.mean_a;
      sums[m.b][m.a] += m.record.mean_b;
      samples[m.a].push_back(m.record.mean_a);
      samples[m.b].push_back(m.record.mean_b);
    }
  }

  res.payoff_matrix.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) res.payoff_matrix[i][j] = sums[i][j] / n_iter;
  }

  res.average.resize(n);
  res.std_error.resize(n);
  res.wins.assign(n, 0);
  res.ties.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    const double count = static_cast<double>(s.size());
    double total = 0.0;
    for (double v : s) total += v;
    const double mean = total / count;
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    res.average[i] = mean;
    res.std_error[i] = s.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (res.payoff_matrix[i][j] > res.payoff_matrix[j][i]) {
        ++res.wins[i];
      } else if (res.payoff_matrix[i][j] == res.payoff_matrix[j][i]) {
        ++res.ties[i];
      }
    }
  }

  res.ranking.resize(n);
  std::iota(res.ranking.begin(), res.ranking.end(), std::size_t{0});
  std::stable_sort(res.ranking.begin(), res.ranking.end(),
                   [&](std::size_t x, std::size_t y) { return res.average[x] > res.average[y]; });
  return res;
}

std::vector<SeriesPoint> time_series(const TournamentResult& result, const std::string& subject,
                                     std::uint32_t window) {
  if (window == 0) throw std::invalid_argument("window must be positive");
  const std::size_t who = result.index_of(subject);

  std::vector<double> cumulative;  // summed over matches, per turn
  std::size_t matches = 0;
  for (const auto& m : result.matches) {
    if (m.a != who && m.b != who) continue;
    const auto& turns = m.record.turns;
    if (cumulative.size() < turns.size()) cumulative.resize(turns.size(), 0.0);
    double running = 0.0;
    for (std::size_t t = 0; t < turns.size(); ++t) {
      double score;
      if (m.a == m.b) {
        score = 0.5 * (turns[t].payoff_a + turns[t].payoff_b);
      } else {
        score = m.a == who ? turns[t].payoff_a : turns[t].payoff_b;
      }
      running += score;
      cumulative[t] += running / static_cast<double>(t + 1);
    }
    ++matches;
  }

  std::vector<SeriesPoint> out;
  for (std::size_t t = window; t <= cumulative.size(); t += window) {
    out.push_back({static_cast<std::uint32_t>(t), cumulative[t - 1] / static_cast<double>(matches)});
  }
  return out;
}

}  // namespace ipd
