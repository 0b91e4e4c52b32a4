#include <iostream>

#include "mtbalign_cli/commands.hpp"

int main(int argc, char** argv) { return mtb::cli::run_cli(argc, argv, std::cout, std::cerr); }
