#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "itespec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return itespec::cli::main_entry(args, std::cout, std::cerr);
}
