#include <iostream>
#include <vector>

#include "etrails/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return etrails::dispatch(args, std::cout, std::cerr);
}
