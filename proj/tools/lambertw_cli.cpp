#include <iostream>

#include "lambertw/cli.hpp"

int main(int argc, char** argv) {
  return lambertw::cli::main_entry(argc, argv, std::cout, std::cerr);
}
