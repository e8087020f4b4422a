#pragma once

#include <ostream>
#include <string>

#include "trapdecay/config.hpp"

namespace trapdecay {

/// Process exit codes shared by all subcommands.
enum ExitStatus : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitIoError = 2,
  kExitNoQuiescentPhase = 3,
};

int exit_status_for(ErrorCode code);

/// Per-level populations on a uniform grid over [0, t_max]. Writes to
/// config.output, or to `out` when no output path is set.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Long-format table of every swept trajectory followed by the summary table.
/// With an output path p the summary goes to summary_path(p).
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Single-record burst/quiescent report.
int cmd_phases(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "runs/fig2.csv" -> "runs/fig2.summary.csv"; no extension appends ".summary".
std::string summary_path(const std::string& path);

}  // namespace trapdecay
