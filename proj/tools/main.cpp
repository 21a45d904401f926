#include <iostream>

#include "hajlasz/cli.hpp"

int main(int argc, char** argv) {
  return hajlasz::dispatch(argc, argv, std::cout, std::cerr);
}
