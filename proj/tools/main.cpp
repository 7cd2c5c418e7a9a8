#include <string>
#include <vector>

#include "branchcut/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return branchcut::run_cli(args);
}
