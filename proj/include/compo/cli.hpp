#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compo {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kGrammarFormatVersion = 1;
inline constexpr int kPairFormatVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,       // check failed or witness found
  kExitInput = 2,      // usage or input error
  kExitResource = 3,   // a cap was exceeded
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compo
