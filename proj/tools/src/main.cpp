#include <iostream>

#include "lelm_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lelm::cli::run(args, std::cout, std::cerr);
}
