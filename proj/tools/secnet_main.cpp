#include <iostream>
#include <string>
#include <vector>

#include "secnet/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return secnet::cli::run(args, std::cout, std::cerr);
}
