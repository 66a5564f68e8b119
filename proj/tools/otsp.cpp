#include <iostream>

#include "otsp/cli.hpp"

int main(int argc, char** argv) { return otsp::run_cli({argv, argv + argc}, std::cout, std::cerr); }
