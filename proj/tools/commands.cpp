#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "ipd/analysis.hpp"
#include "ipd/engine.hpp"
#include "ipd/report.hpp"

namespace ipd::cli {
namespace fs = std::filesystem;
namespace {

// Files are written as "<name>.partial" and renamed on commit(); anything
// not committed is removed.
class StagedOutputs {
 public:
  StagedOutputs(fs::path dir, std::string header) : dir_(std::move(dir)), header_(std::move(header)) {}
  StagedOutputs(const StagedOutputs&) = delete;
  StagedOutputs& operator=(const StagedOutputs&) = delete;

  ~StagedOutputs() {
    if (committed_) return;
    std::error_code ec;
    for (auto& f : files_) {
      f.stream.reset();
      fs::remove(staged(f.target), ec);
    }
  }

  std::ostream& open(const fs::path& relative) {
    const fs::path target = dir_ / relative;
    fs::create_directories(target.parent_path());
    auto stream = std::make_unique<std::ofstream>(staged(target), std::ios::binary | std::ios::trunc);
    if (!*stream) throw std::runtime_error("cannot write '" + staged(target).string() + "'");
    *stream << header_ << '\n';
    files_.push_back({target, std::move(stream)});
    return *files_.back().stream;
  }

  std::vector<fs::path> commit() {
    for (auto& f : files_) {
      f.stream->flush();
      if (!*f.stream) throw std::runtime_error("write failed for '" + f.target.string() + "'");
      f.stream.reset();
    }
    std::vector<fs::path> out;
    for (auto& f : files_) {
      fs::rename(staged(f.target), f.target);
      out.push_back(f.target);
    }
    committed_ = true;
    return out;
  }

 private:
  struct File {
    fs::path target;
    std::unique_ptr<std::ofstream> stream;
  };

  static fs::path staged(const fs::path& target) {
    fs::path p = target;
    p += ".partial";
    return p;
  }

  fs::path dir_;
  std::string header_;
  std::vector<File> files_;
  bool committed_ = false;
};

// The output directory is left out so a rerun elsewhere is byte-identical.
std::string header_for(const RunConfig& cfg) {
  auto doc = config_to_json(cfg);
  doc.erase("out");
  return "# config: " + doc.dump();
}

std::string safe_name(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return s;
}

void log_summary(std::ostream& log, const TournamentResult& res) {
  for (std::size_t k = 0; k < res.ranking.size(); ++k) {
    const std::size_t i = res.ranking[k];
    char line[160];
    std::snprintf(line, sizeof line, "%2zu. %-12s %.3f  %.3f  %d\n", k + 1, res.roster[i].name.c_str(),
                  res.average[i], res.std_error[i], res.wins[i]);
    log << line;
  }
}

int run_tournament(const RunConfig& cfg, StagedOutputs& out, std::ostream& log) {
  const TournamentResult res = run_round_robin(cfg.players(), cfg.match_config(), cfg.n_iter, cfg.seed);
  write_summary_csv(out.open("summary.csv"), res);
  write_matrix_csv(out.open("matrix.csv"), res);
  if (cfg.trace) {
    for (const auto& m : res.matches) {
      const std::string file = "traces/" + safe_name(res.roster[m.a].name) + "_vs_" +
                               safe_name(res.roster[m.b].name) + "_iter" + std::to_string(m.iteration) + ".csv";
      write_trace(out.open(file), m.record, true);
    }
  }
  log_summary(log, res);
  return kExitOk;
}

int run_match(const RunConfig& cfg, StagedOutputs& out, std::ostream& log) {
  if (cfg.match_a.empty() || cfg.match_b.empty()) throw ConfigError("match: two player names are required");
  const MatchRecord rec = play_match(cfg.resolve(cfg.match_a), cfg.resolve(cfg.match_b), cfg.match_config());
  write_trace(out.open("match_trace.csv"), rec, true);
  const auto series = windowed_means(rec, cfg.window);
  write_windowed_csv(out.open("match_series.csv"), series);
  log << rec.name_a << " vs " << rec.name_b << ": " << format_number(rec.mean_a) << " / "
      << format_number(rec.mean_b) << '\n';
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, StagedOutputs& out, std::ostream& log) {
  const auto rows = exploration_sweep(cfg.players(), cfg.match_config(), cfg.n_iter, cfg.grid, cfg.seed);
  write_sweep_csv(out.open("sweep.csv"), rows);
  for (const auto& r : rows) {
    log << "p_exp " << format_number(r.p_exp) << ": " << format_number(r.average) << " (place " << r.place
        << ")\n";
  }
  return kExitOk;
}

int run_zd_check(const RunConfig& cfg, StagedOutputs& out, std::ostream& log) {
  const PayoffMatrix pm = cfg.payoff_matrix();
  std::vector<ZdReportRow> rows;
  int failures = 0;
  for (const auto& target : cfg.zd) {
    const auto zd = std::get<MemoryOneStrategy>(cfg.resolve(target.strategy).kind);
    for (const auto& name : cfg.roster) {
      const Player other = cfg.resolve(name);
      if (other.is_predictor()) continue;
      const auto& y = std::get<MemoryOneStrategy>(other.kind);
      ZdReportRow row{zd.name, y.name, target.slope, target.intercept,
                      zd_residual(zd, y, target.slope, target.intercept, pm)};
      if (!row.check.holds()) {
        ++failures;
        log << "FAIL " << row.x << " vs " << row.y << ": residual " << format_number(row.check.residual) << '\n';
      }
      rows.push_back(std::move(row));
    }
  }
  write_zd_csv(out.open("zd.csv"), rows);
  log << rows.size() - failures << "/" << rows.size() << " relations hold\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

int run_timeseries(const RunConfig& cfg, StagedOutputs& out, std::ostream& log) {
  const TournamentResult res = run_round_robin(cfg.players(), cfg.match_config(), cfg.n_iter, cfg.seed);
  std::vector<SeriesPoint> series;
  try {
    series = time_series(res, cfg.subject, cfg.window);
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("subject: ") + e.what());
  }
  if (series.empty()) throw ConfigError("window: larger than the number of turns");
  std::vector<std::pair<double, double>> points;
  for (const auto& p : series) points.emplace_back(static_cast<double>(p.turn), p.mean);
  const InverseSqrtFit fit = fit_inverse_sqrt(points);

  write_timeseries_csv(out.open("timeseries.csv"), series);
  auto& f = out.open("timeseries_fit.csv");
  f << "a,b,rms\n" << format_number(fit.a) << ',' << format_number(fit.b) << ',' << format_number(fit.rms) << '\n';
  log << cfg.subject << ": final " << format_number(series.back().mean) << ", fit a=" << format_number(fit.a)
      << " b=" << format_number(fit.b) << " rms=" << format_number(fit.rms) << '\n';
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"tournament", "match", "sweep", "zd-check", "timeseries"};
  return names;
}

int run(const std::string& command, const RunConfig& cfg, std::ostream& log) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw ConfigError("command: unknown subcommand '" + command + "'");
  }
  RunConfig recorded = cfg;
  recorded.command = command;

  StagedOutputs out(cfg.out, header_for(recorded));
  int code = kExitOk;
  if (command == "tournament") code = run_tournament(recorded, out, log);
  else if (command == "match") code = run_match(recorded, out, log);
  else if (command == "sweep") code = run_sweep(recorded, out, log);
  else if (command == "zd-check") code = run_zd_check(recorded, out, log);
  else code = run_timeseries(recorded, out, log);

  for (const auto& f : out.commit()) log << "wrote " << f.string() << '\n';
  return code;
}

}  // namespace ipd::cli
