#include <iostream>
#include <string>
#include <vector>

#include "twoml/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twoml::cli::run(args, std::cout, std::cerr);
}
