#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mexcode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

struct Environment {
  // Value of MEXCODE_CONFIG; --config takes precedence.
  std::optional<std::string> config_path;

  static Environment from_process();
};

// Runs one invocation. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Environment& env = {});

}  // namespace mexcode::cli
