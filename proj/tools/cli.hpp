#pragma once

#include <ostream>

namespace brownloop::cli {

/// Parses argv, runs one subcommand and returns the process exit code:
/// 0 success, 1 domain error, 2 usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brownloop::cli
