#include <iostream>

#include "colormaps/cli.hpp"

int main(int argc, char** argv)
{
    return colormaps::cli::run_cli(argc, argv, std::cout, std::cerr);
}
