#include <iostream>

#include "valveflow/cli.hpp"

int main(int argc, char** argv) { return valveflow::run_cli(argc, argv, std::cout, std::cerr); }
