#pragma once

#include <ostream>

namespace sil {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;  // invalid triple, rejected proof, violations
inline constexpr int kExitError = 2;  // usage, parse, configuration or I/O error

// Entry point of the `silc` tool. Subcommands: check, infer, check-proof, fuzz.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sil
