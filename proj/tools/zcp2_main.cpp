#include <iostream>

#include "zcp2/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return zcp2::cli::run(args, std::cout, std::cerr);
}
