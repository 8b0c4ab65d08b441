#pragma once

// Command-line entry point. Reports are `key=value` lines; exit status is 0
// on success, 1 when a verification fails and 2 on input errors.

#include <string>
#include <vector>

namespace meyer {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

/// `args` excludes the program name.
CliResult dispatch(const std::vector<std::string>& args);

}  // namespace meyer
