#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace cscope::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kBudget = 3,
};

/// Rounds to 12 significant digits so every printed float is reproducible.
nlohmann::json display_number(double x);

/// Runs one invocation (args exclude the program name) and writes the
/// JSON-lines record stream to out. The trailing "meta" record carries
/// version and timing and is the only nondeterministic line.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace cscope::cli
