#pragma once

#include <string>
#include <utility>
#include <vector>

#include "srdcv/ranking.hpp"
#include "srdcv/rng.hpp"

namespace srdcv {

struct Transformation {
    enum class Kind { inversions, top_inversions, bottom_inversions, underdog, mid_swaps };

    Kind kind = Kind::inversions;
    int count = 0; // x for the inversion kinds; unused otherwise

    static Transformation inversions(int x) { return {Kind::inversions, x}; }
    static Transformation top(int x) { return {Kind::top_inversions, x}; }
    static Transformation bottom(int x) { return {Kind::bottom_inversions, x}; }
    static Transformation underdog() { return {Kind::underdog, 0}; }
    static Transformation mid_swaps() { return {Kind::mid_swaps, 4}; }

    std::string label(int n) const;
};

// Applies the transformation to the identity reference (1..n).
Ranking apply_transformation(const Transformation& t, int n, Rng& rng);

struct Scenario {
    enum class Draw { fixed, random_same, random_distinct };

    int id = 0;          // 1..9
    std::string label;   // e.g. "64|16", "RT I"
    bool type_two = false;
    Draw draw = Draw::fixed;
    Transformation a, b;
    int n = 0;

    std::string type_label() const { return type_two ? "II" : "I"; }
};

// The six-transformation pool the random scenarios draw from.
std::vector<Transformation> random_transform_pool(int n);

// The nine scenarios for size n. Scenario 8's inversion count comes from the
// published values for n in {7, 13, 32} and from calibrate_x otherwise.
std::vector<Scenario> scenario_catalog(int n);

// Smallest x whose Monte Carlo mean footrule distance under x inversions
// reaches the mean distance of the mid-swap transformation.
int calibrate_x(int n, Rng& rng, int samples);

// CSV manifest of the catalog: id,label,type,transform_a,transform_b
std::string scenario_manifest_csv(int n);

std::pair<Ranking, Ranking> sample_scenario_pair(const Scenario& s, Rng& rng);

} // namespace srdcv
