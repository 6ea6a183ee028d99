#include <iostream>

#include "sil/cli.hpp"

int main(int argc, char** argv) { return sil::run_cli(argc, argv, std::cout, std::cerr); }
