#include "eqlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return eqlab::execute(args, std::cout, std::cerr).exit_code;
}
