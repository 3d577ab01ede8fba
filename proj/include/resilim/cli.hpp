#pragma once

#include <iosfwd>

namespace resilim::cli {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;      ///< bad documents, bad flags
inline constexpr int kExitModelError = 3;      ///< e.g. uncontrollable defender
inline constexpr int kExitNumericalError = 4;  ///< integration/solver failure

/// Run the full command line interface against explicit streams.
/// Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resilim::cli
