#include <iostream>

#include "tightcert/cli.hpp"

int main(int argc, char** argv) { return tightcert::cli_main(argc, argv, std::cout, std::cerr); }
