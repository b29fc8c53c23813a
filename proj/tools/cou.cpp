#include <iostream>

#include "cou/cli.hpp"

int main(int argc, char** argv) {
  return cou::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
