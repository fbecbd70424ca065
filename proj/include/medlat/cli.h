#pragma once

#include <iosfwd>

namespace medlat {

inline constexpr const char* kMachineHeader = "#medlat-machine v1";

// Exit codes: 0 success, 1 domain error (the message names the error kind),
// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace medlat
