#pragma once

#include <vector>

#include "verify_types.hpp"

namespace rmt::verify {

// The acceptance suite: twelve numbered checks, in order. `which` filters
// by criterion number (1-based); empty means all. quick shrinks sample
// counts for a fast smoke pass.
std::vector<CheckResult> run_acceptance(const std::vector<int>& which,
                                        bool quick);

// The named verification suites behind `verify`: Gamma/integral
// consistency, integer-moment consistency, oracle agreement, density
// validation, decomposition identity.
std::vector<CheckResult> run_verify_suites(bool quick);

}  // namespace rmt::verify
