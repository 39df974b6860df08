#include <iostream>
#include <vector>

#include "vass/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vass::run_command(args, std::cout, std::cerr);
}
