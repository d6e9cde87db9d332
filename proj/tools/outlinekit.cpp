#include <iostream>

#include "outlinekit/cli.hpp"

int main(int argc, char** argv) { return outlinekit::cli::run(argc, argv, std::cout, std::cerr); }
