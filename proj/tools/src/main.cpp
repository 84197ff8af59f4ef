#include <iostream>

#include "symdisk_cli/cli.hpp"

int main(int argc, char** argv) { return symdisk::cli::run(argc, argv, std::cout, std::cerr); }
