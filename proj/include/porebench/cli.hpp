#pragma once

#include <string>
#include <vector>

namespace porebench::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kArgument = 2,
    kIo = 3,
    kValidation = 4,
};

// Entry point of the `porebench` executable. args[0] is the program name.
int run(const std::vector<std::string>& args);

}  // namespace porebench::cli
