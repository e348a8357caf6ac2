#include <iostream>

#include "apb/cli.hpp"

int main(int argc, char** argv)
{
    return apb::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
