#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roleforge/rsr.hpp"

namespace roleforge::cli {

enum ExitCode : int { kOk = 0, kFalse = 1, kUsage = 2, kPropertyFailure = 3 };

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Label file: one "alias = rsr P ; P ; ..." or "alias = closure P ; ..." per
// line, '#' comments. Positions use frame syntax. Returns the aliases in file
// order with the role each one denotes.
std::vector<std::pair<std::string, PositionSet>> parse_labels(const PositionSpace& space, std::string_view text);

}  // namespace roleforge::cli
