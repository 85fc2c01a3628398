#include <iostream>
#include <string>
#include <vector>

#include "ppm/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ppm::run_cli(args, std::cout, std::cerr);
}
