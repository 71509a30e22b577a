#include <iostream>

#include "cylwig/cli.hpp"

int main(int argc, char** argv) { return cylwig::cli::run(argc, argv, std::cout, std::cerr); }
