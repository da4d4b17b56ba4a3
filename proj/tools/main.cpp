#include <iostream>

#include "pasp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pasp::run_cli(args, std::cout, std::cerr);
}
