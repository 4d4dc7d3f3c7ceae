#include <iostream>

#include "tkb/cli.hpp"

int main(int argc, char** argv) { return tkb::cli::run(argc, argv, std::cout, std::cerr); }
