#include "srdcv/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>

#include "srdcv/stats_math.hpp"

namespace srdcv {

std::map<int64_t, double> SrdNull::pmf() const {
    std::map<int64_t, double> out;
    if (kind != Kind::exact) return out;
    for (size_t d = 0; d < counts.size(); ++d)
        if (counts[d] > 0)
            out[static_cast<int64_t>(d)] = static_cast<double>(counts[d]) / static_cast<double>(total);
    return out;
}

double SrdNull::cdf_raw_doubled(int64_t raw2) const {
    uint64_t acc = 0;
    for (size_t d = 0; d < counts.size(); ++d) {
        if (static_cast<int64_t>(2 * d) > raw2) break;
        acc += counts[d];
    }
    return static_cast<double>(acc) / static_cast<double>(total);
}

double SrdNull::quantile_normalized(double q) const {
    if (kind == Kind::normal) return mean_norm + sd_norm * normal_quantile(q);
    uint64_t acc = 0;
    int64_t m = max_distance(n);
    for (size_t d = 0; d < counts.size(); ++d) {
        acc += counts[d];
        if (static_cast<double>(acc) >= q * static_cast<double>(total))
            return static_cast<double>(d) / static_cast<double>(m);
    }
    return 1.0;
}

namespace {

SrdNull enumerate_null(int n) {
    SrdNull null;
    null.kind = SrdNull::Kind::exact;
    null.n = n;
    null.counts.assign(static_cast<size_t>(max_distance(n)) + 1, 0);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    uint64_t total = 0;
    do {
        int64_t d = 0;
        for (int i = 0; i < n; ++i) d += std::abs(perm[static_cast<size_t>(i)] - (i + 1));
        ++null.counts[static_cast<size_t>(d)];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    null.total = total;
    return null;
}

std::mutex cache_mutex;
std::unique_ptr<SrdNull> cache[11];

} // namespace

const SrdNull& exact_null(int n) {
    if (n < 2) fail(Errc::too_short, "exact null needs n >= 2");
    if (n > 10) fail(Errc::out_of_supported_range, "exact null supported for n <= 10; use normal_null");
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<SrdNull>(enumerate_null(n));
    return *slot;
}

SrdNull normal_null(int n) {
    if (n < 2) fail(Errc::too_short, "normal null needs n >= 2");
    SrdNull null;
    null.kind = SrdNull::Kind::normal;
    null.n = n;
    null.mean_norm = 2.0 / 3.0;
    null.sd_norm = std::sqrt(8.0 / (45.0 * n));
    return null;
}

PermTestResult perm_test(const SrdScore& score) {
    PermTestResult r;
    r.srd_normalized = score.normalized;
    if (score.n <= 10) {
        const SrdNull& null = exact_null(score.n);
        r.p_value = null.cdf_raw_doubled(score.raw_doubled);
        r.xx1 = null.quantile_normalized(0.05);
        r.median = null.quantile_normalized(0.50);
        r.xx19 = null.quantile_normalized(0.95);
    } else {
        SrdNull null = normal_null(score.n);
        r.p_value = normal_cdf((score.normalized - null.mean_norm) / null.sd_norm);
        r.xx1 = null.quantile_normalized(0.05);
        r.median = null.quantile_normalized(0.50);
        r.xx19 = null.quantile_normalized(0.95);
    }
    return r;
}

} // namespace srdcv
