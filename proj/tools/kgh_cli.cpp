#include "kgh/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kgh::cli::run(argc, argv, std::cout, std::cerr); }
