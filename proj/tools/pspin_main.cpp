#include <iostream>

#include "pspin/cli.hpp"

int main(int argc, char** argv) { return pspin::cli::run(argc, argv, std::cout, std::cerr); }
