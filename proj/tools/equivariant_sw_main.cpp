#include <iostream>
#include <string>
#include <vector>

#include "esw/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return esw::run_cli(args, std::cout, std::cerr);
}
