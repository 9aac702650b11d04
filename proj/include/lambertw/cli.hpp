#ifndef LAMBERTW_CLI_HPP
#define LAMBERTW_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lambertw/recursions.hpp"

namespace lambertw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitParse = 4;

// A fully validated invocation. `--x` accepts a plain decimal, `ln:<decimal>`
// or `pow10:<decimal>`; branch/domain mismatches are rejected at parse time.
struct Command {
  std::string verb;
  std::optional<Branch> branch;
  std::optional<Argument> arg;
  std::string x_text;
  unsigned digits = 34;
  unsigned steps = 0;
  std::optional<Method> method;
  std::string figure_id;
  unsigned points = 200;
};

// Thrown when --help is requested; carries the text to print.
struct HelpRequested {
  std::string text;
};

// argv without the program name. Throws ParseError on malformed input and
// HelpRequested for --help. Reads LAMBERT_DEFAULT_DIGITS (default 34) when
// --digits is absent.
Command parse_args(const std::vector<std::string>& argv);

// Executes the command; diagnostics go to err. Returns one of the kExit
// codes above.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

// parse + run + exit-code mapping, the whole program behind main().
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace lambertw::cli

#endif  // LAMBERTW_CLI_HPP
