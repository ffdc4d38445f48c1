#pragma once

#include <ostream>
#include <string>

namespace msow::cli {

/// Runs the oracle suites (all, or the one named) and prints a table.
/// True when every case agreed with its oracle.
bool run_selftest(std::ostream& out, bool as_json, const std::string& only);

}  // namespace msow::cli
