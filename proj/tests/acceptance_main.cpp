#include <algorithm>
#include <iostream>

#include "meyer/acceptance.hpp"

int main() {
  const auto results = meyer::run_acceptance(std::cout, {}, &std::cerr);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << "summary=" << (all ? "pass" : "fail") << '\n';
  return all ? 0 : 1;
}
