#include <iostream>

#include "latesched/cli.hpp"

int main(int argc, char** argv) {
  return latesched::run_cli(argc, argv, std::cout, std::cerr);
}
