#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace delearn::cli {

/// Exit codes: 0 success, 1 negative result (not bisimilar, invalid domain,
/// formula false, no plan), 2 input error.
enum ExitCode : int { ok = 0, negative = 1, input_error = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace delearn::cli
