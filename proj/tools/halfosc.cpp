#include <iostream>

#include "halfosc/cli.hpp"

int main(int argc, char** argv) { return halfosc::cli::run(argc, argv, std::cout, std::cerr); }
