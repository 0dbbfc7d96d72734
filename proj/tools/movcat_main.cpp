#include <iostream>

#include "movcat/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const movcat::CommandResult r = movcat::run_cli(args);
  (r.status == 2 && !r.json ? std::cerr : std::cout) << r.output();
  return r.status;
}
