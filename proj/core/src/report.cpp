#include "ipd/report.hpp"

#include <cmath>
#include <cstdio>

namespace ipd {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  // snprintf honours the C locale's decimal point; the process never changes it.
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_summary_csv(std::ostream& os, const TournamentResult& r) {
  os << "rank,name,average,stderr,wins\n";
  for (std::size_t k = 0; k < r.ranking.size(); ++k) {
    const std::size_t i = r.ranking[k];
    os << k + 1 << ',' << r.roster[i].name << ',' << format_number(r.average[i]) << ','
       << format_number(r.std_error[i]) << ',' << r.wins[i] << '\n';
  }
}

void write_matrix_csv(std::ostream& os, const TournamentResult& r) {
  os << "player";
  for (std::size_t j : r.ranking) os << ',' << r.roster[j].name;
  os << '\n';
  for (std::size_t i : r.ranking) {
    os << r.roster[i].name;
    for (std::size_t j : r.ranking) os << ',' << format_number(r.payoff_matrix[i][j]);
    os << '\n';
  }
}

void write_trace(std::ostream& os, const MatchRecord& rec, bool dump_models) {
  os << "turn,action_a,action_b,payoff_a,payoff_b\n";
  for (std::size_t t = 0; t < rec.turns.size(); ++t) {
    const auto& tr = rec.turns[t];
    os << t + 1 << ',' << to_char(tr.a) << ',' << to_char(tr.b) << ',' << format_number(tr.payoff_a)
       << ',' << format_number(tr.payoff_b) << '\n';
  }
  if (!dump_models) return;
  auto dump = [&](const char* seat, const std::string& name, const OpponentModel& m) {
    os << "# model " << seat << ' ' << name;
    for (auto s : kAllOutcomes) {
      os << ' ' << to_string(s) << "=" << m.cooperations(s) << '/' << m.observations(s);
    }
    os << '\n';
  };
  if (rec.model_a) dump("a", rec.name_a, *rec.model_a);
  if (rec.model_b) dump("b", rec.name_b, *rec.model_b);
}

void write_windowed_csv(std::ostream& os, std::span<const WindowPoint> points) {
  os << "turn,mean_a,mean_b\n";
  for (const auto& p : points) {
    os << p.turn << ',' << format_number(p.mean_a) << ',' << format_number(p.mean_b) << '\n';
  }
}

void write_timeseries_csv(std::ostream& os, std::span<const SeriesPoint> series) {
  os << "turn,mean\n";
  for (const auto& p : series) os << p.turn << ',' << format_number(p.mean) << '\n';
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "p_exp,average,delta_zdgtft2,place,wins\n";
  for (const auto& r : rows) {
    os << format_number(r.p_exp) << ',' << format_number(r.average) << ','
       << format_number(r.delta_vs_zdgtft) << ',' << r.place << ',' << r.wins << '\n';
  }
}

void write_zd_csv(std::ostream& os, std::span<const ZdReportRow> rows) {
  os << "pair,slope,intercept,residual,ergodic\n";
  for (const auto& r : rows) {
    os << r.x << " vs " << r.y << ',' << format_number(r.slope) << ',' << format_number(r.intercept)
       << ',' << format_number(r.check.residual) << ',' << (r.check.ergodic ? "true" : "false") << '\n';
  }
}

}  // namespace ipd
