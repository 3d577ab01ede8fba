#include <iostream>

#include "resilim/cli.hpp"

int main(int argc, char** argv) {
  return resilim::cli::run(argc, argv, std::cout, std::cerr);
}
