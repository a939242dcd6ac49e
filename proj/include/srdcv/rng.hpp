#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace srdcv {

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bit-identical across compilers and platforms; std:: distributions are not.
class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next();

    // Unbiased uniform draw from [0, bound), bound >= 1.
    uint64_t below(uint64_t bound);

    // Inclusive range draw.
    int uniform_int(int lo, int hi);

    double uniform01();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t s_[4];
};

// Deterministic key derivation for independent streams (counter-based).
uint64_t mix_seed(std::initializer_list<uint64_t> parts);

} // namespace srdcv
