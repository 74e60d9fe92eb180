#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdepth {

/// Runs one command (args exclude the program name) and writes its report.
/// Exit codes: 0 success, 1 input error, 2 property violation or failed
/// verification, 3 guard refusal.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mdepth
