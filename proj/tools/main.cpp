#include <iostream>
#include <string>
#include <vector>

#include "padic_beta/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return padic_beta::cli::run(args, std::cout, std::cerr);
}
