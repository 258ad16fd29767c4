#include <iostream>

#include "minram/cli.hpp"

int main(int argc, char** argv) { return minram::run_cli(argc, argv, std::cout, std::cerr); }
