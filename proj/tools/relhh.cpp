#include <iostream>

#include "relhh/cli.hpp"

int main(int argc, char** argv) { return relhh::run_cli(argc, argv, std::cout, std::cerr); }
