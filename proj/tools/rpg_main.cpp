#include "rpg/cli.hpp"

#include <iostream>

int main(int argc, char ** argv) { return rpg::run_cli(argc, argv, std::cout, std::cerr); }
