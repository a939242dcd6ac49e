#include "srdcv/srd.hpp"

#include <cstdlib>

namespace srdcv {

int64_t distance_doubled(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) fail(Errc::size_mismatch, "rankings differ in length");
    int64_t sum = 0;
    int n = a.size();
    for (int i = 0; i < n; ++i) sum += std::abs(static_cast<int64_t>(a.doubled(i)) - b.doubled(i));
    return sum;
}

double distance(const Ranking& a, const Ranking& b) {
    return distance_doubled(a, b) / 2.0;
}

int64_t max_distance(int n) {
    if (n < 2) fail(Errc::too_short, "max distance needs n >= 2");
    int64_t nn = static_cast<int64_t>(n) * n;
    return (n % 2 == 0) ? nn / 2 : (nn - 1) / 2;
}

SrdScore srd(const Ranking& ranking, const Ranking& reference) {
    int64_t raw2 = distance_doubled(ranking, reference);
    int n = ranking.size();
    SrdScore s;
    s.n = n;
    s.raw_doubled = raw2;
    s.normalized = static_cast<double>(raw2) / static_cast<double>(2 * max_distance(n));
    return s;
}

} // namespace srdcv
