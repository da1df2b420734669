#include <iostream>

#include "rwp_cli/commands.hpp"

int main(int argc, char** argv) { return rwp::cli::run(argc, argv, std::cout, std::cerr); }
