#include <iostream>

#include "rmtheta/cli.hpp"

int main(int argc, char **argv) {
    return rmtheta::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
