#include <iostream>
#include <string>
#include <vector>

#include "kcross/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kcross::cli::main(args, std::cout, std::cerr);
}
