#include <iostream>

#include "sigot/cli_io.hpp"

int main(int argc, char** argv) {
  return sigot::run_cli(argc, argv, std::cout, std::cerr);
}
