#include <iostream>

#include "qks_cli/cli.hpp"

int main(int argc, char** argv) { return qks::cli::run(argc, argv, std::cout, std::cerr); }
