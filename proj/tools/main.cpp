#include <iostream>

#include "qct/cli.hpp"

int main(int argc, char** argv) {
  return qct::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
