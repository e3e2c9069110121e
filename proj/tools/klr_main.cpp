#include <iostream>
#include <vector>

#include "klr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return klr::run_command(args, std::cout, std::cerr);
}
