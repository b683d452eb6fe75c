#include <iostream>
#include <string>
#include <vector>

#include "nbpk_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nbpk::cli::run(args, std::cout, std::cerr);
}
