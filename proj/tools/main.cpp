#include <iostream>

#include "wedgescatter/cli.hpp"

int main(int argc, char** argv) { return wedgescatter::cli::run(argc, argv, std::cout, std::cerr); }
