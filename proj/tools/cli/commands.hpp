#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace projcov::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       // bad flags or study file
  kDataError = 3,   // unreadable or inconsistent input data
  kStudyError = 4,  // a simulation study failed
};

/// Entry point of the projcov tool. Decisions are reported in the output,
/// never through the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projcov::cli
