#include <iostream>

#include "dwrosn/cli.hpp"

int main(int argc, char** argv) { return dwrosn::cli_main(argc, argv, std::cout, std::cerr); }
