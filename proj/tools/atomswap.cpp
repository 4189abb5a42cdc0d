#include "atomswap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return atomswap::cli::run(argc, argv, std::cout, std::cerr); }
