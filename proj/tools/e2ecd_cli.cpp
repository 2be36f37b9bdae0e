#include <iostream>

#include "e2ecd/cli/commands.hpp"

int main(int argc, char** argv) {
  return e2ecd::cli::run_main(argc, argv, std::cout, std::cerr);
}
