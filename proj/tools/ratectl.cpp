#include <iostream>

#include "ratectl/cli.hpp"

int main(int argc, char** argv) { return ratectl::cli::main(argc, argv, std::cout, std::cerr); }
