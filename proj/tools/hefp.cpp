#include "hefp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hefp::cli::run(argc, argv, std::cout, std::cerr); }
