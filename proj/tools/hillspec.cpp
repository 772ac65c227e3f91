#include <iostream>

#include "hillspec/cli.hpp"

int main(int argc, char** argv) { return hillspec::cli::run(argc, argv, std::cout, std::cerr); }
