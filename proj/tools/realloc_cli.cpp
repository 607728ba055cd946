#include <iostream>

#include "reallocation/cli.hpp"

int main(int argc, char** argv) { return reallocation::run_cli(argc, argv, std::cout, std::cerr); }
