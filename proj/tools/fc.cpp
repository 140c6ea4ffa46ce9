#include <iostream>

#include "fc/cli.hpp"

int main(int argc, char** argv) { return fc::dispatch(argc, argv, std::cout, std::cerr); }
