#include "dilator/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return dilator::cli::run(std::move(args), std::cout, std::cerr);
}
