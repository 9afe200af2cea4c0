#include <iostream>

#include "xtalk/cli.h"

int main(int argc, char **argv) {
    return xtalk::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
