#include <iostream>

#include "ecstat/cli.hpp"

int main(int argc, char** argv) { return ecstat::run_cli(argc, argv, std::cout, std::cerr); }
