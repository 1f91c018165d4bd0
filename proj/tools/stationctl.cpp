#include <iostream>

#include "factory/io/cli.hpp"

int main(int argc, char** argv) {
  return factory::io::cli_main(argc, argv, std::cin, std::cout, std::cerr);
}
