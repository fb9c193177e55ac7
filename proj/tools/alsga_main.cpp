#include <iostream>
#include <string>
#include <vector>

#include "alsga/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return alsga::run_cli(args, std::cout, std::cerr);
}
