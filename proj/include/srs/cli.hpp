#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace srs::cli {

/// Exit codes: 0 success, 1 data or module error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, char** argv);

}  // namespace srs::cli
