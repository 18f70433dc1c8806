#include <iostream>
#include <string>
#include <vector>

#include "liesoliton/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return liesoliton::cli::run(args, std::cout, std::cerr);
}
