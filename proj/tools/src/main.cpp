#include <iostream>

#include "sacs_cli/cli.hpp"

int main(int argc, char** argv) { return sacs::cli::run(argc, argv, std::cout, std::cerr); }
