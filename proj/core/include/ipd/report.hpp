#pragma once

#include <ostream>
#include <span>
#include <string>

#include "ipd/analysis.hpp"
#include "ipd/engine.hpp"

namespace ipd {

/// Six significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

/// rank,name,average,stderr,wins
void write_summary_csv(std::ostream& os, const TournamentResult& result);

/// Pairwise mean payoffs, row player against column player, in ranking order.
void write_matrix_csv(std::ostream& os, const TournamentResult& result);

/// turn,action_a,action_b,payoff_a,payoff_b; with `dump_models`, the final
/// counters of any predictor seat follow as comment lines.
void write_trace(std::ostream& os, const MatchRecord& record, bool dump_models = false);

/// turn,mean_a,mean_b
void write_windowed_csv(std::ostream& os, std::span<const WindowPoint> points);

/// turn,mean
void write_timeseries_csv(std::ostream& os, std::span<const SeriesPoint> series);

/// p_exp,average,delta_zdgtft2,place,wins
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

struct ZdReportRow {
  std::string x;
  std::string y;
  double slope;
  double intercept;
  ZdCheck check;
};

/// pair,slope,intercept,residual,ergodic
void write_zd_csv(std::ostream& os, std::span<const ZdReportRow> rows);

}  // namespace ipd
