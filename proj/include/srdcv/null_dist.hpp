#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "srdcv/srd.hpp"

namespace srdcv {

// Null distribution of the SRD of a uniformly random ranking from a fixed
// reference (right-invariance makes the choice of reference irrelevant).
struct SrdNull {
    enum class Kind { exact, normal };

    Kind kind = Kind::normal;
    int n = 0;

    // exact: counts[d] = number of permutations at raw footrule distance d
    std::vector<uint64_t> counts;
    uint64_t total = 0;

    // normal: parameters in normalized units
    double mean_norm = 0.0;
    double sd_norm = 0.0;

    std::map<int64_t, double> pmf() const;

    // lower-tail P(raw distance <= raw2/2), raw2 in doubled units
    double cdf_raw_doubled(int64_t raw2) const;

    // smallest support point with CDF >= q, in normalized units (exact kind);
    // mean + sd * z_q for the normal kind
    double quantile_normalized(double q) const;
};

// Full enumeration of S_n, 2 <= n <= 10; cached and safe for concurrent use.
const SrdNull& exact_null(int n);

// Asymptotic law: normalized SRD ~ N(2/3, sqrt(8/(45 n))).
SrdNull normal_null(int n);

struct PermTestResult {
    double srd_normalized = 0.0;
    double p_value = 1.0;
    double xx1 = 0.0;    // 5% threshold
    double median = 0.0;
    double xx19 = 0.0;   // 95% threshold
};

// One-sided lower-tail test of "closer to the reference than a random
// ranking"; exact null for n <= 10, normal otherwise.
PermTestResult perm_test(const SrdScore& score);

} // namespace srdcv
