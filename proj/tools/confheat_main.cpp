// confheat command-line entry point; see confheat/cli.hpp.
#include <iostream>
#include <string>
#include <vector>

#include "confheat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return confheat::cli::run(args, std::cout, std::cerr);
}
