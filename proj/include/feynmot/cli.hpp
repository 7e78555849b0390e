#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feynmot {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command (args exclude the program name). JSON goes to `out`,
/// including error objects; `err` only receives help text.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace feynmot
