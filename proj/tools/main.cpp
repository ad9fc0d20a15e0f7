#include <iostream>
#include <string>
#include <vector>

#include "fdqubo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fdqubo::cli::run(args, std::cout, std::cerr);
}
