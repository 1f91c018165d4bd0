#pragma once

#include <iosfwd>

namespace factory::io {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

// Entry point of `stationctl`. File arguments accept "-" for `in` / `out`.
// Returns 0 on success, 1 when violations were found, 2 on usage or input errors
// (with a message on `err`).
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace factory::io
