#include <iostream>
#include <vector>

#include "astk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return astk::cli::run(args, std::cout, std::cerr);
}
