#pragma once

// Independent reference computations used only by tests. None of these call
// into the code paths they are used to check.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ipd/game.hpp"
#include "ipd/predictor.hpp"
#include "ipd/rational.hpp"

namespace ipd::oracle {

/// Opponent cooperation probabilities in the focal orientation, CC CD DC DD.
using ModelProbs = std::array<Rational, 4>;

inline ModelProbs probs_from_counts(const std::array<std::uint32_t, 4>& n, const std::array<std::uint32_t, 4>& c) {
  ModelProbs p;
  for (std::size_t i = 0; i < 4; ++i) {
    p[i] = Rational(static_cast<Rational::Int>(c[i]) + 1, static_cast<Rational::Int>(n[i]) + 2);
  }
  return p;
}

inline Rational stage(const PayoffMatrix& pm, Action own, Action opp) {
  if (own == Action::C) return opp == Action::C ? pm.reward() : pm.sucker();
  return opp == Action::C ? pm.temptation() : pm.punishment();
}

inline Rational p_reply(const ModelProbs& p, Action own_prev, Action opp_prev, Action reply) {
  const std::size_t idx = (own_prev == Action::D ? 2 : 0) + (opp_prev == Action::D ? 1 : 0);
  return reply == Action::C ? p[idx] : Rational(1) - p[idx];
}

/// Exact expected payoff of playing the fixed sequence `moves` from the
/// starting joint outcome, by enumerating every opponent reply path.
inline Rational course_value(const ModelProbs& p, Action own0, Action opp0, const std::vector<Action>& moves,
                             const PayoffMatrix& pm) {
  // Depth-first enumeration with explicit path probabilities.
  Rational total = 0;
  struct Frame {
    std::size_t depth;
    Action own_prev, opp_prev;
    Rational weight;
  };
  std::vector<Frame> stack{{0, own0, opp0, Rational(1)}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == moves.size()) continue;
    for (Action reply : {Action::C, Action::D}) {
      const Rational w = f.weight * p_reply(p, f.own_prev, f.opp_prev, reply);
      total += w * stage(pm, moves[f.depth], reply);
      stack.push_back({f.depth + 1, moves[f.depth], reply, w});
    }
  }
  return total;
}

/// Best first move when every course of length `depth` is enumerated and the
/// last move is forced to D. Ties go to D.
inline Action best_first_move(const ModelProbs& p, Action own0, Action opp0, std::size_t depth,
                              const PayoffMatrix& pm) {
  std::array<std::optional<Rational>, 2> best;
  const std::size_t free_moves = depth - 1;
  for (std::uint32_t mask = 0; mask < (1u << free_moves); ++mask) {
    std::vector<Action> moves;
    for (std::size_t k = 0; k < free_moves; ++k) moves.push_back((mask >> k) & 1u ? Action::D : Action::C);
    moves.push_back(Action::D);
    const Rational v = course_value(p, own0, opp0, moves, pm);
    auto& slot = best[moves.front() == Action::C ? 0 : 1];
    if (!slot || v > *slot) slot = v;
  }
  return *best[0] > *best[1] ? Action::C : Action::D;
}

/// All four depth-2 courses CC, CD, DC, DD (no forced last move).
inline std::array<Rational, 4> depth2_courses(const ModelProbs& p, Action own0, Action opp0, const PayoffMatrix& pm) {
  return {course_value(p, own0, opp0, {Action::C, Action::C}, pm),
          course_value(p, own0, opp0, {Action::C, Action::D}, pm),
          course_value(p, own0, opp0, {Action::D, Action::C}, pm),
          course_value(p, own0, opp0, {Action::D, Action::D}, pm)};
}

struct Recount {
  std::array<std::uint32_t, 4> n{};
  std::array<std::uint32_t, 4> c{};
};

/// Counts (previous joint outcome, next opponent move) pairs of a trace.
inline Recount recount(const std::vector<std::pair<Action, Action>>& trace) {
  Recount r;
  for (std::size_t t = 1; t < trace.size(); ++t) {
    const auto [own, opp] = trace[t - 1];
    const std::size_t idx = (own == Action::D ? 2 : 0) + (opp == Action::D ? 1 : 0);
    ++r.n[idx];
    if (trace[t].second == Action::C) ++r.c[idx];
  }
  return r;
}

/// Random counts with 0 <= c <= n <= max_n.
template <typename Rng>
std::pair<std::array<std::uint32_t, 4>, std::array<std::uint32_t, 4>> random_counts(Rng& rng, std::uint32_t max_n) {
  std::array<std::uint32_t, 4> n{}, c{};
  for (std::size_t i = 0; i < 4; ++i) {
    n[i] = std::uniform_int_distribution<std::uint32_t>(0, max_n)(rng);
    c[i] = std::uniform_int_distribution<std::uint32_t>(0, n[i])(rng);
  }
  return {n, c};
}

inline OpponentModel model_from_counts(const std::array<std::uint32_t, 4>& n, const std::array<std::uint32_t, 4>& c) {
  OpponentModel m;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto state = JointOutcome::from_index(i);
    for (std::uint32_t k = 0; k < n[i]; ++k) m.record(state, k < c[i] ? Action::C : Action::D);
  }
  return m;
}

}  // namespace ipd::oracle
