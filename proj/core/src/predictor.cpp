#include "ipd/predictor.hpp"

#include <cmath>
#include <stdexcept>

namespace ipd {

Rational model_probability(const OpponentModel& m, JointOutcome state) {
  return Rational(1 + static_cast<Rational::Int>(m.cooperations(state)),
                  2 + static_cast<Rational::Int>(m.observations(state)));
}

OpponentModel update_model(OpponentModel m, JointOutcome prev_state, Action observed) {
  m.record(prev_state, observed);
  return m;
}

ModelEstimate estimate(const OpponentModel& m) {
  ModelEstimate p;
  for (JointOutcome s : kAllOutcomes) p[s.index()] = model_probability(m, s);
  return p;
}

namespace {

// Course "own move now, D next": payoff of this turn plus the expected
// payoff of the final D against the opponent's reply to this turn.
Rational course_value(const ModelEstimate& p, JointOutcome x0, Action now, const PayoffMatrix& pm) {
  const Rational one = 1;
  const Rational p0 = p[x0.index()];
  const Rational q0 = one - p0;
  const JointOutcome after_c{now, Action::C};
  const JointOutcome after_d{now, Action::D};
  const Rational first = pm.value(after_c) * p0 + pm.value(after_d) * q0;
  const Rational opp_coop_next = p[after_c.index()] * p0 + p[after_d.index()] * q0;
  const Rational opp_defect_next = one - opp_coop_next;
  return first + pm.temptation() * opp_coop_next + pm.punishment() * opp_defect_next;
}

}  // namespace

Rational expected_payoff_coop(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm) {
  return course_value(p, x0, Action::C, pm);
}

Rational expected_payoff_coop(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm) {
  return expected_payoff_coop(estimate(m), x0, pm);
}

Rational expected_payoff_defect(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm) {
  return course_value(p, x0, Action::D, pm);
}

Rational expected_payoff_defect(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm) {
  return expected_payoff_defect(estimate(m), x0, pm);
}

Action decide(const ModelEstimate& p, JointOutcome x0, const PayoffMatrix& pm) {
  return expected_payoff_coop(p, x0, pm) > expected_payoff_defect(p, x0, pm) ? Action::C : Action::D;
}

Action decide(const OpponentModel& m, JointOutcome x0, const PayoffMatrix& pm) {
  return decide(estimate(m), x0, pm);
}

std::uint32_t exploration_turns(std::uint32_t n_turn, double p_exp) {
  if (!(p_exp >= 0.0 && p_exp <= 1.0)) throw std::invalid_argument("p_exp must lie in [0, 1]");
  return static_cast<std::uint32_t>(std::lround(p_exp * static_cast<double>(n_turn)));
}

PredictorState reset(std::uint32_t n_turn, double p_exp) {
  PredictorState ps;
  ps.explore_until = exploration_turns(n_turn, p_exp);
  return ps;
}

Action act(const PredictorState& ps, RngStream& rng, const PayoffMatrix& pm) {
  if (!ps.prev_outcome || ps.turn_index < ps.explore_until) {
    return rng.uniform() < 0.5 ? Action::C : Action::D;
  }
  return decide(ps.model, *ps.prev_outcome, pm);
}

PredictorState observe(PredictorState ps, Action own, Action opp) {
  if (ps.prev_outcome) ps.model.record(*ps.prev_outcome, opp);
  ps.prev_outcome = JointOutcome{own, opp};
  ++ps.turn_index;
  return ps;
}

}  // namespace ipd
