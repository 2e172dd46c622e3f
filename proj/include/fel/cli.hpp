#pragma once

// The `fel` command line. Kept in the library so tests can drive it with an
// argument vector and inspect the exit code and output.

#include <iosfwd>
#include <string>
#include <vector>

namespace fel {

enum ExitCode : int {
  kExitCertified = 0,
  kExitDomain = 2,
  kExitUnconverged = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the shipped parameter tables: $FEL_DATA_DIR if set, else
/// the source tree's data/.
std::string data_dir();

}  // namespace fel
