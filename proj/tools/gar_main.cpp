#include <iostream>

#include "gar/cli.hpp"

int main(int argc, char** argv) { return gar::cli::run(argc, argv, std::cout, std::cerr); }
