// Command-line front end: generate, solve, oracle, export-milp, bench,
// summarize.

#ifndef LATESCHED_CLI_HPP
#define LATESCHED_CLI_HPP

#include <iosfwd>

namespace latesched {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latesched

#endif  // LATESCHED_CLI_HPP
