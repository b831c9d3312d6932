#include <iostream>

#include "ribnet_cli/commands.hpp"

int main(int argc, char** argv) {
  return ribnet::cli::run({argv + 1, argv + argc}, std::cout, std::cerr,
                          ribnet::cli::process_environment());
}
