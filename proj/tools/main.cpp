#include <iostream>

#include "rdlab_cli.hpp"

int main(int argc, char** argv) { return rdlab::cli::main_entry(argc, argv, std::cout, std::cerr); }
