#include <iostream>

#include "nabla/cli/commands.hpp"

int main(int argc, char** argv) { return nabla::cli::run(argc, argv, std::cout, std::cerr); }
