#include <iostream>

#include "qmt/cli.hpp"

int main(int argc, char** argv) {
  return qmt::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
