#include <iostream>

#include "hwi/cli.hpp"

int main(int argc, char** argv) {
  return hwi::cli_main(argc, argv, std::cout, std::cerr);
}
