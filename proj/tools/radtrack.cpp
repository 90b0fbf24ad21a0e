#include <iostream>
#include <string>
#include <vector>

#include "radtrack/cli.hpp"

int main(int argc, char** argv)
{
  const std::vector<std::string> args(argv + 1, argv + argc);
  return radtrack::cli::run(args, std::cout, std::cerr);
}
