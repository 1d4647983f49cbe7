#include "sparsepen/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sparsepen::cli::run(argc, argv, std::cout, std::cerr);
}
