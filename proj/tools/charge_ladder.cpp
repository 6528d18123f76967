#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return charge_ladder::cli::run(argc, argv, std::cout, std::cerr); }
