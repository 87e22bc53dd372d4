#include <string>
#include <vector>

#include "hyperdomain/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hyperdomain::run_cli(args);
}
