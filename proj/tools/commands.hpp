#pragma once

#include <iosfwd>

namespace casimir::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,         // physics or validation failure
  kExitUsage = 2,           // bad flags or configuration
  kExitNonConvergence = 3,  // a quadrature missed its tolerance
};

/// Entry point of casimir-stack. Reads the configuration from the
/// positional path, or from `in` when it is absent or "-".
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace casimir::cli
