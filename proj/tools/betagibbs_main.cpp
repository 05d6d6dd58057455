#include <iostream>

#include "betagibbs/cli.hpp"

int main(int argc, char** argv) { return betagibbs::cli::run(argc, argv, std::cout, std::cerr); }
