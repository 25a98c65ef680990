#pragma once

// Command-line front end. Exit codes: 0 pass or inconclusive, 1 fail, 2 usage
// or parse error.

#include <ostream>

namespace pearl::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pearl::cli
