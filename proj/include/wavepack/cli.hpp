#pragma once

#include <ostream>
#include <span>
#include <string>

namespace wavepack::cli {

enum ExitCode : int {
  kSuccess = 0,
  kRuntimeError = 1,
  kUsageError = 2,
};

/// Runs one command line. `args` excludes the program name, e.g.
/// {"width", "--omega0", "10", "--tau", "2"}. Reports go to `out` unless
/// `--output` names a file; diagnostics go to `err`.
///
/// Subcommands: spectrum, width, adjust, recoil, and replay, which re-runs
/// the `config` object embedded in an earlier JSON report.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wavepack::cli
