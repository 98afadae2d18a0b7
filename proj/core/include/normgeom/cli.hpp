#pragma once

#include <string>
#include <vector>

namespace normgeom::cli {

struct Result {
    int code = 0;
    std::string output;
};

// Runs one CLI invocation; never throws. Exit codes: 0 success, 2 malformed
// input, 3 violated precondition (message names it), 1 internal error.
Result run(const std::vector<std::string>& args);

}  // namespace normgeom::cli
