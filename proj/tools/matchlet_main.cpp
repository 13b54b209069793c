#include <iostream>

#include "matchlet/cli.hpp"

int main(int argc, char** argv) { return matchlet::run_cli(argc, argv, std::cout, std::cerr); }
