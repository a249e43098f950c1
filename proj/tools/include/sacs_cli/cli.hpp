#pragma once

#include <ostream>

namespace sacs::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kPhysicsError = 3,
  kNonadiabatic = 4,
  kDataTolerance = 5,
  kCheckMismatch = 6,
};

/// Runs one command line; never throws. Summary text goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sacs::cli
