#include <iostream>

#include "lnposet/cli.hpp"

int main(int argc, char** argv) {
  return lnposet::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
