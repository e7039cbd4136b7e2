#include "ipd/predictor.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ipd/strategy.hpp"
#include "oracles.hpp"

namespace ipd {
namespace {

const ModelEstimate kWorkedModel{Rational(1), Rational(1), Rational(1, 8), Rational(1, 4)};
const ModelEstimate kUniform{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
const ModelEstimate kCertainCooperator{Rational(1), Rational(1), Rational(1), Rational(1)};

TEST(OpponentModelTest, FreshModelIsMaximallyIgnorant) {
  const OpponentModel m;
  for (JointOutcome s : kAllOutcomes) EXPECT_EQ(model_probability(m, s), Rational(1, 2));
}

TEST(OpponentModelTest, LaplaceCounts) {
  OpponentModel m;
  m.record(kCC, Action::C);
  EXPECT_EQ(model_probability(m, kCC), Rational(2, 3));

  OpponentModel eight;
  for (int k = 0; k < 8; ++k) eight.record(kDD, k == 0 ? Action::C : Action::D);
  EXPECT_EQ(model_probability(eight, kDD), Rational(2, 10));
}

TEST(OpponentModelTest, UpdateTouchesOnlyConditioningState) {
  const OpponentModel coop = update_model({}, kCC, Action::C);
  EXPECT_EQ(model_probability(coop, kCC), Rational(2, 3));
  for (JointOutcome s : {kCD, kDC, kDD}) EXPECT_EQ(model_probability(coop, s), Rational(1, 2));

  const OpponentModel defect = update_model({}, kCC, Action::D);
  EXPECT_EQ(model_probability(defect, kCC), Rational(1, 3));
}

TEST(OpponentModelTest, ManyCooperationsMatchClosedForm) {
  OpponentModel m;
  for (int k = 0; k < 99; ++k) m = update_model(m, kCC, Action::C);
  EXPECT_EQ(model_probability(m, kCC), Rational(100, 101));
  EXPECT_EQ(model_probability(m, kDD), Rational(1, 2));
  EXPECT_EQ(m.observations(kCC), 99u);
  EXPECT_EQ(m.cooperations(kCC), 99u);
}

TEST(ExpectedPayoffTest, WorkedExampleModel) {
  const PayoffMatrix pm;
  EXPECT_EQ(expected_payoff_coop(kWorkedModel, kCD, pm), Rational(8));
  EXPECT_EQ(expected_payoff_defect(kWorkedModel, kCD, pm), Rational(13, 2));
  EXPECT_EQ(decide(kWorkedModel, kCD, pm), Action::C);
}

TEST(ExpectedPayoffTest, UniformModel) {
  const PayoffMatrix pm;
  for (JointOutcome x0 : kAllOutcomes) {
    EXPECT_EQ(expected_payoff_coop(kUniform, x0, pm), Rational(9, 2));
    EXPECT_EQ(expected_payoff_defect(kUniform, x0, pm), Rational(6));
    EXPECT_EQ(decide(kUniform, x0, pm), Action::D);
    EXPECT_EQ(decide(OpponentModel{}, x0, pm), Action::D);
  }
}

TEST(ExpectedPayoffTest, CertainCooperator) {
  const PayoffMatrix pm;
  for (JointOutcome x0 : kAllOutcomes) {
    EXPECT_EQ(expected_payoff_coop(kCertainCooperator, x0, pm), Rational(8));
    EXPECT_EQ(expected_payoff_defect(kCertainCooperator, x0, pm), Rational(10));
    EXPECT_EQ(decide(kCertainCooperator, x0, pm), Action::D);
  }
}

TEST(ExpectedPayoffTest, MatchesCourseEnumeration) {
  std::mt19937_64 gen(2024);
  const PayoffMatrix pm = PayoffMatrix::from_doubles(4, -1, 6.5, 0.5);
  for (int k = 0; k < 500; ++k) {
    const auto [n, c] = oracle::random_counts(gen, 30);
    const OpponentModel m = oracle::model_from_counts(n, c);
    const auto p = oracle::probs_from_counts(n, c);
    for (JointOutcome x0 : kAllOutcomes) {
      const auto courses = oracle::depth2_courses(p, x0.self, x0.opponent, pm);
      EXPECT_EQ(expected_payoff_coop(m, x0, pm), courses[1]);
      EXPECT_EQ(expected_payoff_defect(m, x0, pm), courses[3]);
      const bool coop_wins = std::max(courses[0], courses[1]) > std::max(courses[2], courses[3]);
      EXPECT_EQ(decide(m, x0, pm), coop_wins ? Action::C : Action::D);
    }
  }
}

TEST(PredictorTest, ExplorationWindow) {
  EXPECT_EQ(reset(200, 0.1).explore_until, 20u);
  EXPECT_EQ(reset(200, 0.0).explore_until, 0u);
  EXPECT_EQ(reset(200, 1.0).explore_until, 200u);
  EXPECT_EQ(reset(200, 0.1).model, OpponentModel{});
  EXPECT_THROW(reset(200, 1.5), std::invalid_argument);
}

TEST(PredictorTest, FirstMoveIsFairCoin) {
  const PayoffMatrix pm;
  int coop = 0;
  const int trials = 100000;
  for (int k = 0; k < trials; ++k) {
    RngStream rng(static_cast<std::uint64_t>(k));
    coop += act(reset(200, 0.0), rng, pm) == Action::C ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(coop) / trials, 0.5, 0.01);
}

TEST(PredictorTest, ExploitationUsesDecideWithoutDraws) {
  const PayoffMatrix pm;
  PredictorState ps = reset(200, 0.1);
  ps.turn_index = 50;
  ps.prev_outcome = kCC;
  RngStream rng(9);
  EXPECT_EQ(act(ps, rng, pm), Action::D);
  EXPECT_EQ(rng.position(), 0u);
}

TEST(PredictorTest, ExplorationIgnoresModel) {
  const PayoffMatrix pm;
  PredictorState ps = reset(200, 0.1);
  ps.turn_index = 10;
  ps.prev_outcome = kCC;
  int coop = 0;
  RngStream rng(4);
  for (int k = 0; k < 10000; ++k) coop += act(ps, rng, pm) == Action::C ? 1 : 0;
  EXPECT_EQ(rng.position(), 10000u);
  EXPECT_NEAR(coop / 10000.0, 0.5, 0.02);
}

TEST(PredictorTest, FirstObservationOnlySetsState) {
  const PredictorState ps = observe(reset(200, 0.1), Action::D, Action::C);
  EXPECT_EQ(ps.prev_outcome, kDC);
  EXPECT_EQ(ps.model, OpponentModel{});
  EXPECT_EQ(ps.turn_index, 1u);

  const PredictorState next = observe(ps, Action::C, Action::D);
  EXPECT_EQ(next.model.observations(kDC), 1u);
  EXPECT_EQ(next.model.cooperations(kDC), 0u);
}

TEST(PredictorTest, ModelMatchesRecountOverScriptedTrace) {
  const PayoffMatrix pm;
  const MemoryOneStrategy opponent = builtin("GTFT");
  RngStream own_rng(31), opp_rng(32);
  PredictorState ps = reset(200, 0.1);
  std::vector<std::pair<Action, Action>> trace;
  Action opp = initial_action(opponent, opp_rng, false);
  for (int t = 0; t < 200; ++t) {
    const Action own = act(ps, own_rng, pm);
    if (t > 0) {
      const auto [prev_own, prev_opp] = trace.back();
      opp = next_action(opponent, JointOutcome{prev_opp, prev_own}, opp_rng);
    }
    trace.emplace_back(own, opp);
    ps = observe(ps, own, opp);
  }
  const auto rc = oracle::recount(trace);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(ps.model.observations(JointOutcome::from_index(i)), rc.n[i]);
    EXPECT_EQ(ps.model.cooperations(JointOutcome::from_index(i)), rc.c[i]);
  }
}

}  // namespace
}  // namespace ipd
