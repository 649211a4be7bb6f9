#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wres::cli {

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kBudgetExceeded = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wres::cli
