#include <iostream>
#include <string>
#include <vector>

#include "fekete/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return fekete::run_cli(args, std::cout, std::cerr);
}
