#include "bandpredict/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bandpredict::cli::run(argc, argv, std::cout, std::cerr); }
