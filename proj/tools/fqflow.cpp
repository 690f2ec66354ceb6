#include <iostream>

#include "fqflow/commands.hpp"

int main(int argc, char** argv) { return fqflow::cli::run(argc, argv, std::cout, std::cerr); }
