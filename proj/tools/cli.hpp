#pragma once

#include <iosfwd>

namespace vrope::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;

/// Runs one CLI invocation. Output that would go to stdout/stderr is written
/// to `out`/`err` so tests can drive the CLI in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vrope::cli
