#include <string>
#include <vector>

#include "llab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return llab::cli_run(args);
}
