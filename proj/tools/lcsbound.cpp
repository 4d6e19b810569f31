#include <iostream>

#include "lcsbound/cli.hpp"

int main(int argc, char** argv) {
    return lcsbound::cli::run(argc, argv, std::cout, std::cerr);
}
