#include <iostream>
#include <string>
#include <vector>

#include "lrdmd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return lrdmd::cli::run(args, std::cout, std::cerr);
}
