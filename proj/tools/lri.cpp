#include <iostream>


#include "lri/cli/commands.hpp"

int main(int argc, char** argv) {
  return lri::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
