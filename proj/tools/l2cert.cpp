#include <iostream>

#include "l2cert/cli.hpp"

int main(int argc, char** argv) { return l2cert::run_cli(argc, argv, std::cout, std::cerr); }
