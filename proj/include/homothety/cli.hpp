#pragma once

#include <iosfwd>

namespace homothety::cli {

enum ExitCode : int { kOk = 0, kBadInput = 2, kAbelian = 3, kVerificationFailed = 4 };

/// Entry point of the command-line tool; writes reports to out and
/// diagnostics to err and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homothety::cli
