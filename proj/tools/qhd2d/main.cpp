#include <iostream>

#include "qhd2d/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qhd2d::cli::run_cli(args, std::cout, std::cerr);
}
