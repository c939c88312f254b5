#include <iostream>
#include <string>
#include <vector>

#include "twisted_cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twisted::cli::run_app(args, std::cout, std::cerr);
}
