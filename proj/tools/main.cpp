#include <iostream>
#include <string>
#include <vector>

#include "logint_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return logint::cli::run(args, std::cin, std::cout, std::cerr);
}
