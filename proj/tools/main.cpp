#include <iostream>
#include <string>
#include <vector>

#include "coarsekit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coarsekit::run_cli(args, std::cout, std::cerr);
}
