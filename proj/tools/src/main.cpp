#include "bifractal_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return bifractal::cli::run(argc, argv, std::cout, std::cerr);
}
