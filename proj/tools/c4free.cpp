#include <iostream>
#include <string>
#include <vector>

#include "c4free/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return c4free::run_cli(args, std::cout, std::cerr);
}
