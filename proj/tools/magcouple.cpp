#include <iostream>

#include "magcouple/cli/commands.hpp"

int main(int argc, char** argv) { return magcouple::cli::run(argc, argv, std::cout, std::cerr); }
