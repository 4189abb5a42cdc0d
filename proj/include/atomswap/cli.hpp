#pragma once

#include "atomswap/sweep.hpp"

#include <ostream>
#include <string_view>
#include <vector>

namespace atomswap::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kVerificationFailed = 2,
    kUndefinedConcurrence = 3,
};

/// Strict real-number parse; rejects trailing text such as unit suffixes.
double parse_real(std::string_view text, std::string_view what);
/// "1,5,10"
std::vector<double> parse_list(std::string_view text, std::string_view what);
/// "start:stop:count", both endpoints included.
Range parse_range(std::string_view text, std::string_view what);

/// Runs the command line; output goes to `out` unless --output is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atomswap::cli
