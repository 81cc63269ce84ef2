#include <iostream>

#include "fsconn/cli.hpp"

int main(int argc, char** argv) { return fsconn::run_cli(argc, argv, std::cout, std::cerr); }
