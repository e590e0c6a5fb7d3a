#include <string>
#include <vector>

#include "ca2d/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ca2d::cli::run(args);
}
