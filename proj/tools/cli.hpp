#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fgcalc {

inline constexpr int schema_version = 1;

/// Runs one invocation. args excludes the program name. Returns the exit
/// code: 0 on success, 1 when a mathematical check fails, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fgcalc
