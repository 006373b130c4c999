#include <iostream>

#include "lkb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lkb::run_cli(args, std::cout, std::cerr);
}
