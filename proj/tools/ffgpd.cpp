#include <iostream>
#include <string>
#include <vector>

#include "ffgpd/cli.hpp"

int main(int argc, char** argv) {
  return ffgpd::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
