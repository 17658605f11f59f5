#ifndef SENTPLAN_CLI_H_
#define SENTPLAN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace sentplan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitGate = 1;
inline constexpr int kExitError = 2;

// Runs one command line (argv[0] is the program name). Summaries go to
// `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

}  // namespace sentplan

#endif  // SENTPLAN_CLI_H_
