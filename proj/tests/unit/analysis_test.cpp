#include "ipd/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace ipd {
namespace {

MemoryOneStrategy random_interior(std::mt19937_64& gen, const std::string& name) {
  std::uniform_real_distribution<double> u(0.01, 0.99);
  return make_strategy(name, {u(gen), u(gen), u(gen), u(gen)}, InitialPolicy::AlwaysC);
}

TEST(BuildChainTest, RowsSumToOne) {
  std::mt19937_64 gen(1);
  for (int k = 0; k < 200; ++k) {
    const auto chain = build_chain(random_interior(gen, "X"), random_interior(gen, "Y"));
    for (const auto& row : chain.transition) {
      EXPECT_NEAR(row[0] + row[1] + row[2] + row[3], 1.0, 1e-15);
    }
  }
}

TEST(BuildChainTest, DefectorsAbsorbAtDD) {
  const auto chain = build_chain(builtin("ALLD"), builtin("ALLD"));
  for (const auto& row : chain.transition) EXPECT_EQ(row, (std::array<double, 4>{0, 0, 0, 1}));
}

TEST(BuildChainTest, RandomPairIsUniform) {
  const auto chain = build_chain(builtin("RANDOM"), builtin("RANDOM"));
  for (const auto& row : chain.transition) {
    for (double v : row) EXPECT_EQ(v, 0.25);
  }
}

TEST(BuildChainTest, TftAgainstWslsFromDC) {
  // TFT played D, WSLS played C. TFT copies C; WSLS was suckered and switches to D.
  const auto chain = build_chain(builtin("TFT"), builtin("WSLS"));
  EXPECT_EQ(chain.transition[kDC.index()], (std::array<double, 4>{0, 1, 0, 0}));
}

TEST(StationaryTest, AbsorbingDefection) {
  const auto r = stationary(build_chain(builtin("ALLD"), builtin("ALLD")));
  EXPECT_EQ(r.method, StationaryMethod::DirectSolve);
  EXPECT_TRUE(r.ergodic);
  EXPECT_NEAR(r.distribution[3], 1.0, 1e-12);
}

TEST(StationaryTest, RandomPairIsUniform) {
  const auto r = stationary(build_chain(builtin("RANDOM"), builtin("RANDOM")));
  for (double v : r.distribution) EXPECT_NEAR(v, 0.25, 1e-12);
}

TEST(StationaryTest, TftPairIsNotErgodic) {
  FallbackOptions fast;
  fast.steps = 10000;
  fast.replicas = 20;
  const auto r = stationary(build_chain(builtin("TFT"), builtin("TFT")), fast);
  EXPECT_FALSE(r.ergodic);
  EXPECT_EQ(r.method, StationaryMethod::SimulationFallback);
  EXPECT_NEAR(r.distribution[0] + r.distribution[1] + r.distribution[2] + r.distribution[3], 1.0, 1e-12);
}

TEST(StationaryTest, DistributionIsProbabilityVector) {
  std::mt19937_64 gen(2);
  for (int k = 0; k < 200; ++k) {
    const auto r = stationary(build_chain(random_interior(gen, "X"), random_interior(gen, "Y")));
    double sum = 0.0;
    for (double v : r.distribution) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(StationaryTest, AgreesWithStateFrequencies) {
  const auto chain = build_chain(builtin("ZDGTFT-2"), builtin("RANDOM"));
  FallbackOptions opts;
  opts.steps = 100000;
  opts.replicas = 10;
  const auto freq = simulate_state_frequencies(chain, opts);
  const auto exact = stationary(chain).distribution;
  for (std::size_t s = 0; s < 4; ++s) EXPECT_NEAR(freq[s], exact[s], 0.01);
}

TEST(LongRunTest, Landmarks) {
  const PayoffMatrix pm;
  const auto rr = long_run_payoffs(builtin("RANDOM"), builtin("RANDOM"), pm);
  EXPECT_NEAR(rr.x, 2.25, 1e-12);
  EXPECT_NEAR(rr.y, 2.25, 1e-12);
  const auto dc = long_run_payoffs(builtin("ALLD"), builtin("ALLC"), pm);
  EXPECT_NEAR(dc.x, 5.0, 1e-12);
  EXPECT_NEAR(dc.y, 0.0, 1e-12);
}

TEST(ZdTest, GenerousAgainstRandomAndGtft) {
  const PayoffMatrix pm;
  for (auto other : {"RANDOM", "GTFT"}) {
    const auto c = zd_residual(builtin("ZDGTFT-2"), builtin(other), 2.0, -3.0, pm);
    EXPECT_TRUE(c.ergodic) << other;
    EXPECT_LT(std::abs(c.residual), 1e-9) << other;
    EXPECT_TRUE(c.holds());
  }
}

TEST(ZdTest, ExtortionAgainstRandom) {
  const auto c = zd_residual(builtin("ZDEXTORT-2"), builtin("RANDOM"), 2.0, -1.0, PayoffMatrix{});
  EXPECT_LT(std::abs(c.residual), 1e-9);
}

TEST(ZdTest, RelationHoldsAgainstRandomInteriorOpponents) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 100; ++k) {
    const auto y = random_interior(gen, "Y");
    EXPECT_LT(std::abs(zd_residual(builtin("ZDGTFT-2"), y, 2.0, -3.0, {}).residual), 1e-9);
    EXPECT_LT(std::abs(zd_residual(builtin("ZDEXTORT-2"), y, 2.0, -1.0, {}).residual), 1e-9);
  }
}

TEST(ZdTest, WrongInterceptFails) {
  const auto c = zd_residual(builtin("ZDGTFT-2"), builtin("RANDOM"), 2.0, -1.0, PayoffMatrix{});
  EXPECT_FALSE(c.holds());
  EXPECT_NEAR(c.residual, -2.0, 1e-9);
}

TEST(SweepTest, SinglePointEqualsRoundRobin) {
  std::vector<Player> roster{predictor_player(0.1)};
  for (auto name : builtin_names()) roster.push_back(strategy_player(builtin(name)));
  const std::vector<double> grid{0.3};
  const auto rows = exploration_sweep(roster, {}, 2, grid, 11);
  ASSERT_EQ(rows.size(), 1u);

  roster[0] = predictor_player(0.3);
  const auto res = run_round_robin(roster, {}, 2, 11);
  const auto i = res.index_of("PREDICTOR");
  EXPECT_EQ(rows[0].average, res.average[i]);
  EXPECT_EQ(rows[0].place, res.place_of(i));
  EXPECT_EQ(rows[0].wins, res.wins[i]);
  EXPECT_EQ(rows[0].delta_vs_zdgtft, res.average[i] - res.average[res.index_of("ZDGTFT-2")]);
}

TEST(FitTest, RecoversExactModel) {
  std::vector<std::pair<double, double>> series;
  for (int n = 5; n <= 200; n += 5) series.emplace_back(n, 3.0 - 2.0 / std::sqrt(double(n)));
  const auto fit = fit_inverse_sqrt(series);
  EXPECT_NEAR(fit.a, 3.0, 1e-9);
  EXPECT_NEAR(fit.b, -2.0, 1e-9);
  EXPECT_LT(fit.rms, 1e-9);
}

TEST(FitTest, ConstantSeriesIsFlat) {
  std::vector<std::pair<double, double>> series;
  for (int n = 1; n <= 40; ++n) series.emplace_back(n, 2.5);
  const auto fit = fit_inverse_sqrt(series);
  EXPECT_NEAR(fit.b, 0.0, 1e-9);
  EXPECT_NEAR(fit.a, 2.5, 1e-9);
}

TEST(FitTest, SinglePoint) {
  const std::vector<std::pair<double, double>> series{{10.0, 1.75}};
  const auto fit = fit_inverse_sqrt(series);
  EXPECT_EQ(fit.a, 1.75);
  EXPECT_EQ(fit.b, 0.0);
}

TEST(FitTest, PredictorSeriesFitBeatsSpread) {
  std::vector<Player> roster{predictor_player(0.1)};
  for (auto name : builtin_names()) roster.push_back(strategy_player(builtin(name)));
  const auto res = run_round_robin(roster, {}, 5, 1);
  const auto series = time_series(res, "PREDICTOR", 5);
  std::vector<std::pair<double, double>> points;
  double mean = 0.0;
  for (const auto& p : series) {
    points.emplace_back(p.turn, p.mean);
    mean += p.mean / series.size();
  }
  double var = 0.0;
  for (const auto& p : series) var += (p.mean - mean) * (p.mean - mean) / (series.size() - 1);
  EXPECT_LT(fit_inverse_sqrt(points).rms, std::sqrt(var));
}

}  // namespace
}  // namespace ipd
