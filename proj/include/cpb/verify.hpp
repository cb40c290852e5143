#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cpb {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

struct VerifyCheck {
    std::string suite;
    std::string name;
    std::function<CheckResult(std::uint64_t seed)> run;
};

/// Every module's invariant suite, keyed by suite name
/// (qmat, quantifiers, dynamics, mems, trajectory).
const std::vector<VerifyCheck>& all_checks();

std::vector<std::string> suite_names();

} // namespace cpb
