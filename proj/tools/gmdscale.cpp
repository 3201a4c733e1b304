#include <iostream>
#include <string>
#include <vector>

#include "gmd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gmd::cli::run_cli(args, std::cout, std::cerr);
}
