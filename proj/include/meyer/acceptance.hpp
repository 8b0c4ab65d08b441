#pragma once

// The acceptance suite: every criterion run at its stated tolerance and time
// limit, one result line each.

#include <iosfwd>
#include <string>
#include <vector>

namespace meyer {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool within_time = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;
};

/// Runs the selected criteria (all when `only` is empty) and prints one
/// `criterion=<id> result=pass|fail ...` line per criterion to `out`.
/// Timings go to `timing` when given, keeping `out` byte-identical.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only = {},
                                            std::ostream* timing = nullptr);

}  // namespace meyer
