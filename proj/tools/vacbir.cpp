#include <iostream>

#include "vacbir/cli.hpp"

int main(int argc, char** argv) { return vacbir::cli::run(argc, argv, std::cout, std::cerr); }
