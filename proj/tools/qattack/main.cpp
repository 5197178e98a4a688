#include <iostream>

#include "qattack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qattack::run_cli(args, std::cout, std::cerr);
}
