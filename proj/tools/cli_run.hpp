#pragma once

#include <ostream>

namespace dotr {

// Full command-line entry point; returns the process exit status.
// Factored out of main() so tests can drive it in-process.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dotr
