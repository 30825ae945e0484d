#include <iostream>
#include <string>
#include <vector>

#include "tqft/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tqft::cli::run(args, std::cout, std::cerr);
}
