#include <iostream>
#include <string>
#include <vector>

#include "cvb/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return cvb::run_cli(args, std::cout, std::cerr);
}
