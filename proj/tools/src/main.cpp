#include <iostream>

#include "infectio_cli/cli.hpp"

int main(int argc, char** argv) {
  return infectio::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
