#include <iostream>

#include "reactorkit/gateway/cli.hpp"

int main(int argc, char** argv) {
  return reactorkit::gateway::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
