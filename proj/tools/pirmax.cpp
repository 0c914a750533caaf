#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return pirmax::cli::dispatch(argc, argv, std::cout, std::cerr); }
