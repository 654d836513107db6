#pragma once

// Built-in self-checks run by `shnls validate`. Each check compares the solver against an exact
// answer that does not go through the code under test.

#include <string>
#include <vector>

namespace shnls::validation {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// "conservation", "multipliers", "exact" or "all". Throws std::invalid_argument otherwise.
std::vector<CheckResult> run_suite(const std::string& suite);

/// "PASS suite/name value=... tol=..." style line.
std::string format_line(const CheckResult& check);

}  // namespace shnls::validation
