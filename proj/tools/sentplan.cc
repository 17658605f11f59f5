#include <iostream>
#include <string>
#include <vector>

#include "sentplan/cli.h"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sentplan::RunCli(args, std::cout, std::cerr);
}
