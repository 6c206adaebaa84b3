#include "ccp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return ccp::cli::run(argc, argv, std::cout, std::cerr);
}
