#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fansq::cli {

/// Exit codes of the fansq tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,      // oracle-check found a discrepancy above tolerance
  kInvalidArguments = 2,
  kComputationFailed = 3,  // convergence, singularity, truncation, empty result
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fansq::cli
