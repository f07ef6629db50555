#include <iostream>

#include "sqlife/cli.hpp"

int main(int argc, char** argv) { return sqlife::cli::run_main(argc, argv, std::cout, std::cerr); }
