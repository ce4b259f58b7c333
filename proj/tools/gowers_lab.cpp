#include <iostream>

#include "gowers/cli.hpp"

int main(int argc, char** argv) {
    return gowers::run_cli(argc, argv, std::cout, std::cerr);
}
