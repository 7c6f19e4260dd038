#include <iostream>

#include "splicemult/cli.hpp"

int main(int argc, char** argv) { return splicemult::run_cli(argc, argv, std::cout, std::cerr); }
