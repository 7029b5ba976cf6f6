#include <iostream>

#include "shufflelab/cli.hpp"

int main(int argc, char** argv) { return shufflelab::cli::run(argc, argv, std::cout, std::cerr); }
