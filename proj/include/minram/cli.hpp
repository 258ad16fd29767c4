#pragma once

#include <iosfwd>

namespace minram {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,      // verdict false, invalid certificate, bound exceeded
  kExitUsage = 2,         // bad arguments or unreadable input
  kExitPrecondition = 3,  // domain, presentation or hypothesis failure
  kExitSearchLimit = 4,   // a prime scan reached its cap
  kExitInternal = 5,
};

// Runs one command; the JSON result goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minram
