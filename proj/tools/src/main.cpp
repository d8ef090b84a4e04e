#include <iostream>

#include "fracperc_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fracperc::cli::run(args, std::cout, std::cerr);
}
