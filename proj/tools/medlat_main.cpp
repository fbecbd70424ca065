#include "medlat/cli.h"

#include <iostream>

int main(int argc, char** argv) { return medlat::run_cli(argc, argv, std::cout, std::cerr); }
