#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdw {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Embedded invariant suite: zero-discord vanishing, loss scaling, bound
/// tightness, dual-path agreement, and state-reader rejection. Deterministic
/// given the seed.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed);

} // namespace qdw
