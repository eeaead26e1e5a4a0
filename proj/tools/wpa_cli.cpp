#include <iostream>
#include <string>
#include <vector>

#include "wpa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wpa::run_cli(args, std::cout, std::cerr);
}
