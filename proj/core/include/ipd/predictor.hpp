#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ipd/game.hpp"
#include "ipd/rational.hpp"
#include "ipd/rng.hpp"

namespace ipd {

/// Per-state counts of the opponent's replies, in the predictor's
/// orientation: state (own previous move, opponent previous move).
///
/// The cooperation estimate is add-one smoothed, (1 + c) / (2 + n), so a fresh
/// model says 1/2 everywhere and no estimate ever reaches 0 or 1.
class OpponentModel {
 public:
  std::uint32_t observations(JointOutcome state) const { return n_[state.index()]; }
  std::uint32_t cooperations(JointOutcome state) const { return c_[state.index()]; }

  /// Records the opponent's reply `observed` to `state`.
  void record(JointOutcome state, Action observed) {
    ++n_[state.index()];
    if (observed == Action::C) ++c_[state.index()];
  }

  friend bool operator==(const OpponentModel&, const OpponentModel&) = default;

 private:
  std::array<std::uint32_t, 4> n_{};
  std::array<std::uint32_t, 4> c_{};
};

/// p(opponent plays C | state) = (1 + c) / (2 + n).
Rational model_probability(const OpponentModel& m, JointOutcome state);

OpponentModel update_model(OpponentModel m, JointOutcome prev_state, Action observed);

/// Opponent cooperation probabilities per state, CC CD DC DD, in the
/// predictor's orientation.
using ModelEstimate = std::array<Rational, 4>;

ModelEstimate estimate(const OpponentModel& m);

/// Expected two-turn payoff of cooperating now and defecting next.
Rational expected_payoff_coop(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm);
Rational expected_payoff_coop(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm);

/// Expected two-turn payoff of defecting twice.
Rational expected_payoff_defect(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm);
Rational expected_payoff_defect(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm);

/// C iff cooperating has strictly higher expected payoff; ties go to D.
Action decide(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm);
Action decide(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm);

struct PredictorState {
  OpponentModel model;
  std::optional<JointOutcome> prev_outcome;  ///< absent before the first turn
  std::uint32_t turn_index = 0;
  std::uint32_t explore_until = 0;  ///< turns [0, explore_until) are random

  friend bool operator==(const PredictorState&, const PredictorState&) = default;
};

/// round(p_exp * n_turn).
std::uint32_t exploration_turns(std::uint32_t n_turn, double p_exp);

/// Fresh state at match start.
PredictorState reset(std::uint32_t n_turn, double p_exp);

/// Random on turn 0 and inside the exploration window (one draw), otherwise
/// decide() on the previous outcome (no draw).
Action act(const PredictorState& ps, RngStream& rng, const PayoffMatrix& pm);

/// Folds in the moves just played. The model is updated at the previous
/// outcome, so the very first observation only sets the conditioning state.
PredictorState observe(PredictorState ps, Action own, Action opp);

}  // namespace ipd
