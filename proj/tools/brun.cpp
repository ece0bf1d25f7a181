#include "brun/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return brun::cli::run(argc, argv, std::cout, std::cerr); }
