#include <iostream>
#include <string>
#include <vector>

#include "icb/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return icb::cli::run(args, std::cout, std::cerr).exit_code;
}
