#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  using namespace ipd::cli;

  CLI::App app{"Iterated prisoner's dilemma: PREDICTOR agent, tournaments and memory-1 analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  FlagOverrides flags;
  std::uint32_t turns = 0, iters = 0, window = 0;
  double p_exp = 0.0;
  std::uint64_t seed = 0;
  std::string roster, payoffs, out, grid, subject;
  bool randomize = false, trace = false;

  app.add_option("--config", config_file, "JSON config, or any output file of this tool")->check(CLI::ExistingFile);
  auto* o_turns = app.add_option("--turns", turns, "Turns per match (default 200)");
  auto* o_iters = app.add_option("--iters", iters, "Matches per pairing (default 5)");
  auto* o_pexp = app.add_option("--p-exp", p_exp, "Exploration fraction of PREDICTOR (default 0.1)");
  auto* o_seed = app.add_option("--seed", seed, "Master seed (default 1)");
  auto* o_roster = app.add_option("--roster", roster, "Comma-separated player names");
  auto* o_rand = app.add_flag("--randomize-initial", randomize, "Randomize first moves of PREDICTOR's opponents");
  auto* o_payoffs = app.add_option("--payoffs", payoffs, "Stage payoffs R,S,T,P (default 3,0,5,1)");
  auto* o_out = app.add_option("--out", out, "Output directory (default out)");
  auto* o_trace = app.add_flag("--trace", trace, "Write per-match traces for tournament");
  auto* o_window = app.add_option("--window", window, "Window in turns for series (default 5)");
  auto* o_grid = app.add_option("--grid", grid, "Comma-separated p_exp values for sweep");

  std::string match_a, match_b;
  auto* cmd_tournament = app.add_subcommand("tournament", "Round robin: summary.csv, matrix.csv");
  auto* cmd_match = app.add_subcommand("match", "One match: match_trace.csv, match_series.csv");
  auto* o_a = cmd_match->add_option("a", match_a, "First player");
  auto* o_b = cmd_match->add_option("b", match_b, "Second player");
  auto* cmd_sweep = app.add_subcommand("sweep", "Exploration sweep: sweep.csv");
  auto* cmd_zd = app.add_subcommand("zd-check", "Zero-determinant relations: zd.csv");
  auto* cmd_ts = app.add_subcommand("timeseries", "Running average and 1/sqrt(n) fit");
  auto* o_subject = cmd_ts->add_option("--subject", subject, "Player to follow (default PREDICTOR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*o_turns) flags.turns = turns;
  if (*o_iters) flags.iters = iters;
  if (*o_pexp) flags.p_exp = p_exp;
  if (*o_seed) flags.seed = seed;
  if (*o_roster) flags.roster = roster;
  if (*o_rand) flags.randomize_initial = randomize;
  if (*o_payoffs) flags.payoffs = payoffs;
  if (*o_out) flags.out = out;
  if (*o_trace) flags.trace = trace;
  if (*o_window) flags.window = window;
  if (*o_grid) flags.grid = grid;
  if (*o_a) flags.match_a = match_a;
  if (*o_b) flags.match_b = match_b;
  if (*o_subject) flags.subject = subject;

  std::string command;
  for (auto* sub : {cmd_tournament, cmd_match, cmd_sweep, cmd_zd, cmd_ts}) {
    if (*sub) command = sub->get_name();
  }

  try {
    std::optional<std::filesystem::path> file;
    if (!config_file.empty()) file = config_file;
    const RunConfig cfg = parse_config(file, flags, command);
    return run(command, cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
