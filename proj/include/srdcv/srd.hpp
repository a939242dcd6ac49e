#pragma once

#include <cstdint>

#include "srdcv/ranking.hpp"

namespace srdcv {

// Manhattan distance between two rankings, in doubled rank units (ties make
// half-integer ranks, so raw distances live in halves; doubled they are exact).
int64_t distance_doubled(const Ranking& a, const Ranking& b);

double distance(const Ranking& a, const Ranking& b);

// Maximum footrule distance over S_n: n^2/2 for even n, (n^2-1)/2 for odd.
int64_t max_distance(int n);

struct SrdScore {
    int n = 0;
    int64_t raw_doubled = 0;
    double normalized = 0.0;

    double raw() const { return raw_doubled / 2.0; }
};

SrdScore srd(const Ranking& ranking, const Ranking& reference);

} // namespace srdcv
