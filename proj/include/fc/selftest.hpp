#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fc {

struct FuzzResult {
    std::string op;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::string first_violation;
};

// Random intervals and points against exact rationals (arithmetic, sqrt, square)
// and 50-digit references (exp, log, normal tail).
std::vector<FuzzResult> containment_fuzz(std::size_t samples_per_class, std::uint64_t seed);

struct DerivCheck {
    std::string name;
    int points = 0;
    int failures = 0;
    double worst = 0;  // largest |enclosure mid - finite difference| / (1 + |fd|)
};

// Closed-form derivative enclosures against central differences at random (beta, alpha).
std::vector<DerivCheck> derivative_fd_checks(int points, std::uint64_t seed);

struct SelftestOptions {
    std::uint64_t seed = 1;
    bool inject_rounding_fault = false;
};

// Fast invariant suite; writes one line per check and returns 0 when all pass, 1 otherwise.
int run_selftest(std::ostream& log, const SelftestOptions& opt = {});

}  // namespace fc
