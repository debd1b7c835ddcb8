#include <iostream>
#include <string>
#include <vector>

#include "pillai/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pillai::run(args, std::cout, std::cerr);
}
