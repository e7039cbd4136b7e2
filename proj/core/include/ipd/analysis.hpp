#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ipd/engine.hpp"
#include "ipd/game.hpp"
#include "ipd/strategy.hpp"

namespace ipd {

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Markov chain over joint outcomes (CC, CD, DC, DD) in player x's
/// orientation. Rows are current states, columns next states.
struct JointChain {
  Matrix4 transition{};
};

/// transition[s][s'] = P(x plays s'.self | s) * P(y plays s'.opponent | s),
/// with y's vector read through as_model_view.
JointChain build_chain(const MemoryOneStrategy& x, const MemoryOneStrategy& y);

enum class StationaryMethod { DirectSolve, SimulationFallback };

struct StationaryResult {
  std::array<double, 4> distribution{};
  StationaryMethod method = StationaryMethod::DirectSolve;
  /// Unique stationary distribution (null space of M - I is one-dimensional).
  bool ergodic = true;
};

struct FallbackOptions {
  std::uint64_t steps = 1'000'000;
  std::uint32_t replicas = 100;
  std::uint64_t seed = 0x5eed'57a7'10aa'0001ULL;
};

/// Solves v (M - I) = 0, sum(v) = 1 with a rank-revealing LU. When the
/// solution is not unique, falls back to empirical state frequencies
/// averaged over seeded replicas started from uniformly random states.
StationaryResult stationary(const JointChain& chain, const FallbackOptions& fallback = {});

/// Empirical state frequencies, averaged over replicas. Exposed for the
/// fallback path and for cross-checks.
std::array<double, 4> simulate_state_frequencies(const JointChain& chain, const FallbackOptions& opts);

struct LongRunPayoffs {
  double x = 0.0;
  double y = 0.0;
  StationaryMethod method = StationaryMethod::DirectSolve;
  bool ergodic = true;
};

LongRunPayoffs long_run_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                                const PayoffMatrix& pm);

struct ZdCheck {
  double residual = 0.0;   ///< Px - (slope * Py + intercept)
  double tolerance = 0.0;  ///< 1e-9 for exact solves, 1e-2 for the simulation fallback
  bool ergodic = true;
  bool approximate = false;

  bool holds() const { return residual <= tolerance && -residual <= tolerance; }
};

ZdCheck zd_residual(const MemoryOneStrategy& x, const MemoryOneStrategy& y, double slope,
                    double intercept, const PayoffMatrix& pm);

struct SweepRow {
  double p_exp;
  double average;            ///< predictor's tournament average
  double delta_vs_zdgtft;    ///< average minus ZDGTFT-2's average (NaN if absent)
  std::size_t place;
  int wins;
};

/// One round robin per grid value, each with the same master seed; only the
/// predictors' exploration fraction changes. The first predictor in the
/// roster is reported.
std::vector<SweepRow> exploration_sweep(const std::vector<Player>& roster, const MatchConfig& cfg,
                                        std::uint32_t n_iter, std::span<const double> grid,
                                        std::uint64_t master_seed);

struct InverseSqrtFit {
  double a = 0.0;
  double b = 0.0;
  double rms = 0.0;
};

/// Least squares of value ~ a + b / sqrt(n). A single point (or a series with
/// one distinct n) gives a = mean value, b = 0.
InverseSqrtFit fit_inverse_sqrt(std::span<const std::pair<double, double>> series);

}  // namespace ipd
