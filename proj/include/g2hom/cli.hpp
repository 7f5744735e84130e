#pragma once

#include <iosfwd>

namespace g2hom {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitInput = 2,  // unknown case, parse or validation failure, bad usage
  kExitEngine = 3,
};

/// Entry point shared by the g2hom binary and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g2hom
