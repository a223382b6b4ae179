// cli.hpp
#pragma once

#include <ostream>

namespace hamconc {

// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitRowFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the hamconc executable; streams are injectable for tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hamconc
