#include <iostream>
#include <string>
#include <vector>

#include "dragondim/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return dragondim::cli::main_entry(args, std::cout, std::cerr);
}
