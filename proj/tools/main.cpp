#include <iostream>

#include "sievelab/runner.hpp"

int main(int argc, char** argv) { return sievelab::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
