#include <iostream>

#include "hamconc/cli.hpp"

int main(int argc, char** argv) { return hamconc::run_cli(argc, argv, std::cout, std::cerr); }
