#include <iostream>

#include "meyer/cli.hpp"

int main(int argc, char** argv) {
  const meyer::CliResult result = meyer::dispatch(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << result.out;
  std::cerr << result.err;
  return result.status;
}
