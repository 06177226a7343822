#include <iostream>

#include "colorenz/cli.hpp"

int main(int argc, char** argv) { return colorenz::run_cli(argc, argv, std::cout, std::cerr); }
