#include <iostream>
#include <string>
#include <vector>

#include "mtoeplitz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mtoeplitz::cli::run_cli(args, std::cout, std::cerr);
}
