#include <iostream>

#include "vecmeasure/cli.hpp"

int main(int argc, char** argv) { return vecmeasure::run_cli(argc, argv, std::cout, std::cerr); }
