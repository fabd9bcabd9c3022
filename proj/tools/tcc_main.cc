#include <iostream>
#include <string>
#include <vector>

#include "tcc/cli.h"

int main(int argc, char** argv) {
    return tcc::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
