#include <iostream>
#include <string>
#include <vector>

#include "parlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return parlab::cli_main(args, std::cout, std::cerr);
}
