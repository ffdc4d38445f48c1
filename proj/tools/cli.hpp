#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msow::cli {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kProperty = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msow::cli
