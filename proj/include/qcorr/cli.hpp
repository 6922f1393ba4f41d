#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Runs one `qcorr` command. args excludes the program name. Results go to
// `out` (or the --out file), diagnostics and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
