#include "ipd/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace ipd {
namespace {

constexpr double kRankThreshold = 1e-10;

}  // namespace

JointChain build_chain(const MemoryOneStrategy& x, const MemoryOneStrategy& y) {
  const CoopVector& px = x.coop;
  const CoopVector py = as_model_view(y);
  JointChain chain;
  for (auto s : kAllOutcomes) {
    const double cx = px[s.index()];
    const double cy = py[s.index()];
    for (auto next : kAllOutcomes) {
      const double fx = next.self == Action::C ? cx : 1.0 - cx;
      const double fy = next.opponent == Action::C ? cy : 1.0 - cy;
      chain.transition[s.index()][next.index()] = fx * fy;
    }
  }
  return chain;
}

std::array<double, 4> simulate_state_frequencies(const JointChain& chain, const FallbackOptions& opts) {
  if (opts.replicas == 0 || opts.steps == 0) throw std::invalid_argument("fallback needs steps and replicas");

  // Row-wise cumulative distributions; the last bucket absorbs rounding.
  std::array<std::array<double, 3>, 4> cdf{};
  for (std::size_t s = 0; s < 4; ++s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k) cdf[s][k] = acc += chain.transition[s][k];
  }

  std::vector<std::array<double, 4>> per_replica(opts.replicas);
  detail::parallel_for(opts.replicas, 0, [&](std::size_t r) {
    RngStream rng(derive_seed(opts.seed, {r}));
    std::array<std::uint64_t, 4> counts{};
    std::size_t state = rng.index(4);
    for (std::uint64_t step = 0; step < opts.steps; ++step) {
      const double u = rng.uniform();
      const auto& c = cdf[state];
      state = u < c[0] ? 0 : u < c[1] ? 1 : u < c[2] ? 2 : 3;
      ++counts[state];
    }
    for (std::size_t s = 0; s < 4; ++s) {
      per_replica[r][s] = static_cast<double>(counts[s]) / static_cast<double>(opts.steps);
    }
  });

  std::array<double, 4> freq{};
  for (const auto& f : per_replica) {
    for (std::size_t s = 0; s < 4; ++s) freq[s] += f[s];
  }
  for (auto& v : freq) v /= opts.replicas;
  return freq;
}

StationaryResult stationary(const JointChain& chain, const FallbackOptions& fallback) {
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = chain.transition[i][j];
  }
  // Column form: (M^T - I) v = 0.
  Eigen::Matrix4d a = m.transpose() - Eigen::Matrix4d::Identity();
  Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
  lu.setThreshold(kRankThreshold);

  StationaryResult out;
  if (lu.rank() != 3) {
    out.distribution = simulate_state_frequencies(chain, fallback);
    out.method = StationaryMethod::SimulationFallback;
    out.ergodic = false;
    return out;
  }

  // Rows of (M^T - I) sum to zero, so one is redundant; swap it for sum(v) = 1.
  Eigen::Matrix4d b = a;
  b.row(3).setOnes();
  Eigen::Vector4d rhs(0.0, 0.0, 0.0, 1.0);
  Eigen::Vector4d v = b.fullPivLu().solve(rhs);

  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    v(i) = std::max(v(i), 0.0);
    total += v(i);
  }
  for (int i = 0; i < 4; ++i) out.distribution[i] = v(i) / total;
  return out;
}

LongRunPayoffs long_run_payoffs(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                                const PayoffMatrix& pm) {
  const StationaryResult st = stationary(build_chain(x, y));
  const auto [R, S, T, P] = pm.as_doubles();
  const auto& v = st.distribution;
  LongRunPayoffs out;
  out.x = v[0] * R + v[1] * S + v[2] * T + v[3] * P;
  out.y = v[0] * R + v[1] * T + v[2] * S + v[3] * P;
  out.method = st.method;
  out.ergodic = st.ergodic;
  return out;
}

ZdCheck zd_residual(const MemoryOneStrategy& x, const MemoryOneStrategy& y, double slope,
                    double intercept, const PayoffMatrix& pm) {
  const LongRunPayoffs p = long_run_payoffs(x, y, pm);
  ZdCheck out;
  out.residual = p.x - (slope * p.y + intercept);
  out.ergodic = p.ergodic;
  out.approximate = p.method == StationaryMethod::SimulationFallback;
  out.tolerance = out.approximate ? 1e-2 : 1e-9;
  return out;
}

std::vector<SweepRow> exploration_sweep(const std::vector<Player>& roster, const MatchConfig& cfg,
                                        std::uint32_t n_iter, std::span<const double> grid,
                                        std::uint64_t master_seed) {
  const auto predictor = std::find_if(roster.begin(), roster.end(),
                                      [](const Player& p) { return p.is_predictor(); });
  if (predictor == roster.end()) throw std::invalid_argument("sweep roster has no predictor");
  const std::string subject = predictor->name;

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double p_exp : grid) {
    if (!(p_exp >= 0.0 && p_exp <= 1.0)) throw std::invalid_argument("sweep grid values must lie in [0, 1]");
    std::vector<Player> players = roster;
    for (auto& pl : players) {
      if (auto* spec = std::get_if<PredictorSpec>(&pl.kind)) spec->p_exp = p_exp;
    }
    const TournamentResult res = run_round_robin(players, cfg, n_iter, master_seed);
    const std::size_t who = res.index_of(subject);

    double delta = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < res.roster.size(); ++i) {
      const auto& name = res.roster[i].name;
      if (name == "ZDGTFT-2" || name == "ZD-GTFT-2") delta = res.average[who] - res.average[i];
    }
    rows.push_back({p_exp, res.average[who], delta, res.place_of(who), res.wins[who]});
  }
  return rows;
}

InverseSqrtFit fit_inverse_sqrt(std::span<const std::pair<double, double>> series) {
  if (series.empty()) throw std::invalid_argument("fit needs at least one point");
  for (const auto& [n, v] : series) {
    if (!(n >= 1.0)) throw std::invalid_argument("fit abscissae must be >= 1");
  }

  const bool one_abscissa = std::all_of(series.begin(), series.end(),
                                        [&](const auto& p) { return p.first == series.front().first; });
  InverseSqrtFit fit;
  if (one_abscissa) {
    double mean = 0.0;
    for (const auto& p : series) mean += p.second;
    fit.a = mean / static_cast<double>(series.size());
  } else {
    const auto rows = static_cast<Eigen::Index>(series.size());
    Eigen::MatrixXd design(rows, 2);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      design(i, 0) = 1.0;
      design(i, 1) = 1.0 / std::sqrt(series[i].first);
      y(i) = series[i].second;
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
    fit.a = coef(0);
    fit.b = coef(1);
  }

  double ss = 0.0;
  for (const auto& [n, v] : series) {
    const double r = v - (fit.a + fit.b / std::sqrt(n));
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(series.size()));
  return fit;
}

}  // namespace ipd
