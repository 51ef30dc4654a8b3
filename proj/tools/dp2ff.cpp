#include <iostream>
#include <string>
#include <vector>

#include "dp2ff/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dp2ff::run_command(args, std::cout, std::cerr);
}
