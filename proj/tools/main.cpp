#include <iostream>

#include "lexis/cli.hpp"

int main(int argc, char** argv) {
    return lexis::run_cli(argc, argv, std::cout, std::cerr);
}
