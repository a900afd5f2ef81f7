#include <iostream>

#include "apcong_cli/cli.hpp"

int main(int argc, char** argv) { return apcong::cli::run(argc, argv, std::cout, std::cerr); }
