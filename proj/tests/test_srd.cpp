#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "srdcv/srd.hpp"

using namespace srdcv;

namespace {

std::vector<Ranking> all_permutations(int n) {
    std::vector<int32_t> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<Ranking> out;
    do {
        std::vector<int32_t> d;
        for (int32_t v : perm) d.push_back(2 * v);
        out.push_back(Ranking::from_doubled(std::move(d)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

TEST_CASE("distance basics") {
    Ranking id4 = Ranking::identity(4);
    CHECK(distance(id4, id4) == 0);
    Ranking rev5 = Ranking::from_ranks({5, 4, 3, 2, 1});
    CHECK(distance(Ranking::identity(5), rev5) == 12);
    CHECK(distance(Ranking::from_ranks({2, 3, 1}), Ranking::identity(3)) == 4);
    CHECK_THROWS_AS((void)distance(id4, Ranking::identity(5)), Error);
}

TEST_CASE("max_distance closed form and brute force") {
    CHECK(max_distance(32) == 512);
    CHECK(max_distance(7) == 24);
    CHECK_THROWS_AS((void)max_distance(1), Error);
    // brute force over S_3 x S_3
    auto perms = all_permutations(3);
    int64_t best = 0;
    for (const auto& a : perms)
        for (const auto& b : perms) best = std::max(best, distance_doubled(a, b));
    CHECK(best / 2 == 4);
    CHECK(max_distance(3) == 4);
}

TEST_CASE("srd normalization") {
    Ranking id7 = Ranking::identity(7);
    SrdScore zero = srd(id7, id7);
    CHECK(zero.raw() == 0);
    CHECK(zero.normalized == 0);
    SrdScore full = srd(Ranking::from_ranks({4, 3, 2, 1}), Ranking::identity(4));
    CHECK(full.raw() == 8);
    CHECK(full.normalized == 1.0);
}

TEST_CASE("metric axioms, right-invariance and the maximum bound for small n") {
    for (int n = 2; n <= 4; ++n) {
        auto perms = all_permutations(n);
        int64_t m2 = 2 * max_distance(n);
        for (size_t i = 0; i < perms.size(); ++i) {
            for (size_t j = 0; j < perms.size(); ++j) {
                int64_t dij = distance_doubled(perms[i], perms[j]);
                CHECK(dij >= 0);
                CHECK(dij <= m2);
                CHECK((dij == 0) == (i == j));
                CHECK(dij == distance_doubled(perms[j], perms[i]));
            }
        }
        // triangle inequality and right-invariance
        for (const auto& a : perms)
            for (const auto& b : perms) {
                for (const auto& c : perms)
                    CHECK(distance_doubled(a, b) <=
                          distance_doubled(a, c) + distance_doubled(c, b));
                for (const auto& sigma : perms) {
                    std::vector<int32_t> as, bs;
                    for (int k = 0; k < n; ++k) {
                        int pos = sigma.doubled(k) / 2 - 1;
                        as.push_back(a.doubled(pos));
                        bs.push_back(b.doubled(pos));
                    }
                    CHECK(distance_doubled(Ranking::from_doubled(as), Ranking::from_doubled(bs)) ==
                          distance_doubled(a, b));
                }
            }
    }
}

TEST_CASE("no permutation beats the reversal distance, n up to 8") {
    for (int n = 6; n <= 8; ++n) {
        std::vector<int32_t> perm(static_cast<size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        int64_t best = 0;
        do {
            int64_t d = 0;
            for (int i = 0; i < n; ++i) d += std::abs(perm[static_cast<size_t>(i)] - (i + 1));
            CHECK(d <= max_distance(n));
            best = std::max(best, d);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(best == max_distance(n));
        std::vector<double> rev(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) rev[static_cast<size_t>(i)] = n - i;
        CHECK(distance_doubled(Ranking::from_ranks(rev), Ranking::identity(n)) ==
              2 * max_distance(n));
    }
}

TEST_CASE("normalized SRD invariant under object relabeling") {
    auto perms = all_permutations(4);
    Ranking a = Ranking::from_ranks({3, 1, 4, 2});
    Ranking b = Ranking::from_ranks({2, 4, 1, 3});
    double base = srd(a, b).normalized;
    for (const auto& sigma : perms) {
        std::vector<int32_t> as, bs;
        for (int k = 0; k < 4; ++k) {
            int pos = sigma.doubled(k) / 2 - 1;
            as.push_back(a.doubled(pos));
            bs.push_back(b.doubled(pos));
        }
        CHECK(srd(Ranking::from_doubled(as), Ranking::from_doubled(bs)).normalized == base);
    }
}
