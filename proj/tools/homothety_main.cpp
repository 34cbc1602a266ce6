#include <iostream>

#include "homothety/cli.hpp"

int main(int argc, char** argv) { return homothety::cli::run(argc, argv, std::cout, std::cerr); }
