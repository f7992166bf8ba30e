// cli.hpp — command-line entry point.

#pragma once

namespace rabinls {

// Subcommands: simulate, sweep, check-criteria, verify, appendix.
// Exit codes: 0 success, 1 validation error, 2 runtime failure,
// 3 verification violation.
int cli_main(int argc, const char* const* argv);

}  // namespace rabinls
