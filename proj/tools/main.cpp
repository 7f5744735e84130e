#include <iostream>

#include "g2hom/cli.hpp"

int main(int argc, char** argv) { return g2hom::run_cli(argc, argv, std::cout, std::cerr); }
