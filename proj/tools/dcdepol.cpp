#include <iostream>
#include <string>
#include <vector>

#include "dcdepol/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dcdepol::cli::run(args, std::cout, std::cerr);
}
