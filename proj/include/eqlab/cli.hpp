#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace eqlab {

struct CommandOutcome {
  int exit_code = 0;  // 0 ok, 1 validation, 2 numerical, 3 I/O or usage
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one `eqlab` invocation. args[0] is the program name.
CommandOutcome execute(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace eqlab
