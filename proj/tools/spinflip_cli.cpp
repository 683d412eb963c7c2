#include <iostream>

#include "spinflip/cli.hpp"

int main(int argc, char** argv) { return spinflip::run_cli(argc, argv, std::cout, std::cerr); }
