#include <iostream>

#include "polar/io/commands.hpp"

int main(int argc, char** argv) { return polar::io::run(argc, argv, std::cout, std::cerr); }
