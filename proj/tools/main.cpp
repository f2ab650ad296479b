#include <iostream>
#include <string>
#include <vector>

#include "cgr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cgr::run(std::move(args), std::cout, std::cerr);
}
