#include <iostream>
#include <string>
#include <vector>

#include "normgeom/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = normgeom::cli::run(args);
    (result.code == 0 ? std::cout : std::cerr) << result.output;
    return result.code;
}
