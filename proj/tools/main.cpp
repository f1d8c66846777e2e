#include <iostream>

#include "fesenko/cli.hpp"

int main(int argc, char** argv) { return fesenko::cli::run(argc, argv, std::cout, std::cerr); }
