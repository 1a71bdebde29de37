#include <iostream>
#include <vector>

#include "symlab/cli_app.hpp"

int main(int argc, char** argv) {
    return symlab::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                           std::cerr);
}
