#include <iostream>
#include <string>
#include <vector>

#include "tempvar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tempvar::cli::run_main(args, std::cout, std::cerr);
}
