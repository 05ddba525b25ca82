#include <iostream>

#include "hilbmod/cli.hpp"

int main(int argc, char** argv) { return hilbmod::run_cli(argc, argv, std::cout, std::cerr); }
