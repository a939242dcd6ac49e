#include "srdcv/scenario.hpp"

#include <numeric>

#include "srdcv/srd.hpp"

namespace srdcv {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// swap the elements at 1-based positions i and i+1
void adjacent_swap(std::vector<int32_t>& v, int i) {
    std::swap(v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(i)]);
}

std::vector<int32_t> identity_vec(int n) {
    std::vector<int32_t> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

Ranking to_ranking(const std::vector<int32_t>& v) {
    std::vector<int32_t> d;
    d.reserve(v.size());
    for (int32_t r : v) d.push_back(2 * r);
    return Ranking::from_doubled(std::move(d));
}

} // namespace

std::string Transformation::label(int n) const {
    switch (kind) {
        case Kind::inversions: return std::to_string(count);
        case Kind::top_inversions: return std::to_string(count) + "t";
        case Kind::bottom_inversions: return std::to_string(count) + "b";
        case Kind::underdog: return "1u";
        case Kind::mid_swaps: return "4m";
    }
    (void)n;
    return "?";
}

Ranking apply_transformation(const Transformation& t, int n, Rng& rng) {
    using K = Transformation::Kind;
    if (n < 2 || ((t.kind == K::underdog || t.kind == K::mid_swaps) && n < 4))
        fail(Errc::size_too_small, "ranking too small for this transformation");
    if (t.count < 0) fail(Errc::invalid_config, "inversion count must be nonnegative");

    std::vector<int32_t> v = identity_vec(n);
    switch (t.kind) {
        case K::inversions:
            for (int s = 0; s < t.count; ++s) adjacent_swap(v, rng.uniform_int(1, n - 1));
            break;
        case K::top_inversions: {
            int hi = n / 2 - 1; // swap positions stay inside 1..floor(n/2)
            if (hi < 1) fail(Errc::size_too_small, "top half too small for inversions");
            for (int s = 0; s < t.count; ++s) adjacent_swap(v, rng.uniform_int(1, hi));
            break;
        }
        case K::bottom_inversions: {
            int lo = n / 2 + 1;
            if (lo > n - 1) fail(Errc::size_too_small, "bottom half too small for inversions");
            for (int s = 0; s < t.count; ++s) adjacent_swap(v, rng.uniform_int(lo, n - 1));
            break;
        }
        case K::underdog: {
            int p = rng.uniform_int(n / 2 + 1, n); // bottom ceil(n/2) positions
            std::swap(v[0], v[static_cast<size_t>(p - 1)]);
            break;
        }
        case K::mid_swaps: {
            int off = ceil_div(n, 4);
            for (int s = 0; s < 4; ++s) {
                int pos = rng.uniform_int(1, n - off);
                std::swap(v[static_cast<size_t>(pos - 1)], v[static_cast<size_t>(pos + off - 1)]);
            }
            break;
        }
    }
    return to_ranking(v);
}

std::vector<Transformation> random_transform_pool(int n) {
    int half = ceil_div(n, 2);
    return {Transformation::inversions(2 * n), Transformation::inversions(n),
            Transformation::top(half),         Transformation::bottom(half),
            Transformation::underdog(),        Transformation::mid_swaps()};
}

int calibrate_x(int n, Rng& rng, int samples) {
    if (n < 4) fail(Errc::unsupported_size, "calibration needs n >= 4");
    if (samples < 1) fail(Errc::invalid_config, "calibration needs a positive sample count");
    Ranking ref = Ranking::identity(n);
    Transformation mid = Transformation::mid_swaps();
    double target = 0.0;
    for (int s = 0; s < samples; ++s)
        target += distance(apply_transformation(mid, n, rng), ref);
    target /= samples;

    int limit = 4 * n * n; // inversions saturate well below this
    for (int x = 1; x <= limit; ++x) {
        Transformation inv = Transformation::inversions(x);
        double mean = 0.0;
        for (int s = 0; s < samples; ++s)
            mean += distance(apply_transformation(inv, n, rng), ref);
        mean /= samples;
        if (mean >= target) return x;
    }
    fail(Errc::invalid_config, "inversion calibration failed to reach the mid-swap mean");
}

std::vector<Scenario> scenario_catalog(int n) {
    if (n != 7 && n < 8) fail(Errc::unsupported_size, "scenario catalog needs n = 7 or n >= 8");
    int half = ceil_div(n, 2);
    int x4m;
    switch (n) {
        case 32: x4m = 88; break;
        case 13: x4m = 41; break;
        case 7: x4m = 14; break;
        default: {
            Rng rng(mix_seed({0x5cd5u, static_cast<uint64_t>(n)}));
            x4m = calibrate_x(n, rng, 10000);
        }
    }

    auto inv = Transformation::inversions;
    std::vector<Scenario> out;
    auto add = [&](int id, Scenario::Draw draw, Transformation a, Transformation b, bool type_two) {
        Scenario s;
        s.id = id;
        s.draw = draw;
        s.a = a;
        s.b = b;
        s.n = n;
        s.type_two = type_two;
        if (draw == Scenario::Draw::fixed)
            s.label = a.label(n) + "|" + b.label(n);
        else
            s.label = type_two ? "RT II" : "RT I";
        out.push_back(std::move(s));
    };

    add(1, Scenario::Draw::fixed, inv(2 * n), inv(2 * n), false);
    add(2, Scenario::Draw::fixed, inv(n), inv(n), false);
    add(3, Scenario::Draw::random_same, {}, {}, false);
    add(4, Scenario::Draw::fixed, inv(2 * n), inv(half), true);
    add(5, Scenario::Draw::fixed, inv(n), inv(half), true);
    add(6, Scenario::Draw::fixed, Transformation::top(half), Transformation::bottom(half), true);
    add(7, Scenario::Draw::fixed, inv(2 * n), Transformation::underdog(), true);
    add(8, Scenario::Draw::fixed, inv(x4m), Transformation::mid_swaps(), true);
    add(9, Scenario::Draw::random_distinct, {}, {}, true);
    return out;
}

std::string scenario_manifest_csv(int n) {
    std::string out = "id,label,type,transform_a,transform_b\n";
    for (const auto& s : scenario_catalog(n)) {
        std::string a = "random", b = "random";
        if (s.draw == Scenario::Draw::fixed) {
            a = s.a.label(n);
            b = s.b.label(n);
        } else if (s.draw == Scenario::Draw::random_distinct) {
            b = "random-distinct";
        }
        out += std::to_string(s.id) + "," + s.label + "," + s.type_label() + "," + a + "," + b + "\n";
    }
    return out;
}

std::pair<Ranking, Ranking> sample_scenario_pair(const Scenario& s, Rng& rng) {
    switch (s.draw) {
        case Scenario::Draw::fixed:
            break;
        case Scenario::Draw::random_same: {
            auto pool = random_transform_pool(s.n);
            const Transformation& t = pool[rng.below(pool.size())];
            Ranking a = apply_transformation(t, s.n, rng);
            Ranking b = apply_transformation(t, s.n, rng);
            return {std::move(a), std::move(b)};
        }
        case Scenario::Draw::random_distinct: {
            auto pool = random_transform_pool(s.n);
            size_t ia = rng.below(pool.size());
            size_t ib = rng.below(pool.size() - 1);
            if (ib >= ia) ++ib;
            Ranking a = apply_transformation(pool[ia], s.n, rng);
            Ranking b = apply_transformation(pool[ib], s.n, rng);
            return {std::move(a), std::move(b)};
        }
    }
    Ranking a = apply_transformation(s.a, s.n, rng);
    Ranking b = apply_transformation(s.b, s.n, rng);
    return {std::move(a), std::move(b)};
}

} // namespace srdcv
