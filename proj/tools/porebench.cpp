#include <string>
#include <vector>

#include "porebench/cli.hpp"

int main(int argc, char** argv) {
    return porebench::cli::run(std::vector<std::string>(argv, argv + argc));
}
