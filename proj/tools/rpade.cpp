#include <iostream>
#include <string>
#include <vector>

#include "rpm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rpm::cli::run(args, std::cout, std::cerr);
}
