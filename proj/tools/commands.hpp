#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace ipd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheckFailed = 3;

/// Subcommand names accepted by run().
const std::vector<std::string>& command_names();

/// Runs one subcommand and writes its files under cfg.out. Every file starts
/// with "# config: <json>". Files are staged and renamed into place only
/// after all of them were written; on error nothing is left behind.
/// Returns kExitCheckFailed when zd-check finds a relation outside its
/// tolerance. Throws ConfigError for invalid command/config combinations.
int run(const std::string& command, const RunConfig& cfg, std::ostream& log);

}  // namespace ipd::cli
