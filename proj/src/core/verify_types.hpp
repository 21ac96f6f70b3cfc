#pragma once

#include <string>
#include <vector>

namespace rmt::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

}  // namespace rmt::verify
