#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peakon::cli {

// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitCollision = 3;
inline constexpr int kExitNumerical = 4;

// Runs one command: args excludes the program name, e.g.
// {"spectral", "--input", "config.json"}. Results go to --output files or
// `out`; diagnostics (naming the failing module) go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peakon::cli
