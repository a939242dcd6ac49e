#include "srdcv/cv_tests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "srdcv/srd.hpp"
#include "srdcv/stats_math.hpp"

namespace srdcv {

const char* method_name(CvMethod m) {
    switch (m) {
        case CvMethod::wilcoxon: return "wilcoxon";
        case CvMethod::dietterich: return "dietterich";
        case CvMethod::alpaydin: return "alpaydin";
    }
    return "?";
}

CvMethod method_from_name(const std::string& name) {
    if (name == "wilcoxon") return CvMethod::wilcoxon;
    if (name == "dietterich") return CvMethod::dietterich;
    if (name == "alpaydin") return CvMethod::alpaydin;
    fail(Errc::invalid_config, "unknown CV method '" + name + "'");
}

void CvConfig::validate() const {
    if (folds < 2 || folds > 20) fail(Errc::invalid_folds, "fold count must be in [2, 20]");
    if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::invalid_config, "alpha must be in (0, 1)");
}

FoldPlan make_fold_plan(int n, const CvConfig& config, Rng& rng) {
    config.validate();
    if (n < 4) fail(Errc::too_few_rows, "cross-validation needs at least 4 rows");
    int k = config.folds;
    FoldPlan plan;
    plan.method = config.method;
    plan.folds.reserve(static_cast<size_t>(k));

    std::vector<int32_t> rows(static_cast<size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);

    if (config.method == CvMethod::wilcoxon) {
        if (k <= n) {
            rng.shuffle(rows);
            int base = n / k, extra = n % k;
            int pos = 0;
            for (int i = 0; i < k; ++i) {
                int sz = base + (i < extra ? 1 : 0);
                Fold f;
                f.complement.assign(rows.begin() + pos, rows.begin() + pos + sz);
                pos += sz;
                std::sort(f.complement.begin(), f.complement.end());
                f.rows.reserve(static_cast<size_t>(n - sz));
                size_t c = 0;
                for (int32_t r = 0; r < n; ++r) {
                    if (c < f.complement.size() && f.complement[c] == r) { ++c; continue; }
                    f.rows.push_back(r);
                }
                plan.folds.push_back(std::move(f));
            }
        } else {
            // leave-one-out with bootstrap repeats across folds
            for (int i = 0; i < k; ++i) {
                int32_t out = static_cast<int32_t>(rng.below(static_cast<uint64_t>(n)));
                Fold f;
                f.complement.push_back(out);
                f.rows.reserve(static_cast<size_t>(n - 1));
                for (int32_t r = 0; r < n; ++r)
                    if (r != out) f.rows.push_back(r);
                plan.folds.push_back(std::move(f));
            }
        }
        return plan;
    }

    int half = n / 2;
    for (int i = 0; i < k; ++i) {
        rng.shuffle(rows);
        Fold f;
        f.rows.assign(rows.begin(), rows.begin() + half);
        f.complement.assign(rows.begin() + half, rows.end());
        std::sort(f.rows.begin(), f.rows.end());
        std::sort(f.complement.begin(), f.complement.end());
        plan.folds.push_back(std::move(f));
    }
    return plan;
}

namespace {

// exact fold-level SRD difference: num / den with den = 2 * M(fold size)
struct Frac {
    int64_t num = 0;
    int64_t den = 1;
};

bool abs_less(const Frac& a, const Frac& b) {
    return std::abs(a.num) * b.den < std::abs(b.num) * a.den;
}

bool abs_equal(const Frac& a, const Frac& b) {
    return std::abs(a.num) * b.den == std::abs(b.num) * a.den;
}

struct Scratch {
    std::vector<int32_t> vals;
    std::vector<int32_t> ra, rb, rr;
    std::vector<Frac> deltas, deltas_c;
    std::vector<size_t> order;
    std::vector<uint64_t> dp;
};

thread_local Scratch tl_scratch;

std::vector<int32_t> rerank_rows(const Ranking& r, const std::vector<int32_t>& rows, Scratch& s) {
    s.vals.clear();
    for (int32_t i : rows) s.vals.push_back(r.doubled(i));
    return average_ranks_doubled(s.vals);
}

int64_t l1_doubled(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    int64_t sum = 0;
    for (size_t i = 0; i < a.size(); ++i) sum += std::abs(static_cast<int64_t>(a[i]) - b[i]);
    return sum;
}

// normalized SRD pair on one row subset plus their exact difference
Frac fold_delta(const Ranking& p1, const Ranking& p2, const Ranking& ref,
                const std::vector<int32_t>& rows, Scratch& s, std::pair<double, double>& srds) {
    s.ra = rerank_rows(p1, rows, s);
    s.rb = rerank_rows(p2, rows, s);
    s.rr = rerank_rows(ref, rows, s);
    int fold_n = static_cast<int>(rows.size());
    int64_t den = 2 * max_distance(fold_n);
    int64_t raw1 = l1_doubled(s.ra, s.rr);
    int64_t raw2 = l1_doubled(s.rb, s.rr);
    srds = {static_cast<double>(raw1) / static_cast<double>(den),
            static_cast<double>(raw2) / static_cast<double>(den)};
    return {raw1 - raw2, den};
}

double wilcoxon_normal_p(const std::vector<int32_t>& ranks2, int64_t wplus2) {
    size_t kr = ranks2.size();
    double mu = static_cast<double>(kr) * (kr + 1) / 4.0;
    double var = static_cast<double>(kr) * (kr + 1) * (2.0 * kr + 1) / 24.0;
    // standard tie correction: subtract sum(t^3 - t)/48
    std::vector<int32_t> sorted = ranks2;
    std::sort(sorted.begin(), sorted.end());
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        double t = static_cast<double>(j - i + 1);
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if (var <= 0.0) return 1.0;
    double z = (static_cast<double>(wplus2) / 2.0 - mu) / std::sqrt(var);
    return 2.0 * (1.0 - normal_cdf(std::fabs(z)));
}

double p_from_deltas_wilcoxon(std::vector<Frac>& deltas, const CvConfig& config, Scratch& s,
                              double& wplus_out) {
    s.order.clear();
    for (size_t i = 0; i < deltas.size(); ++i)
        if (deltas[i].num != 0) s.order.push_back(i);
    size_t kr = s.order.size();
    wplus_out = 0.0;
    if (kr == 0) return 1.0;

    std::sort(s.order.begin(), s.order.end(),
              [&](size_t a, size_t b) { return abs_less(deltas[a], deltas[b]); });
    std::vector<int32_t> ranks2(kr);
    std::vector<int8_t> positive(kr);
    size_t i = 0;
    while (i < kr) {
        size_t j = i;
        while (j + 1 < kr && abs_equal(deltas[s.order[j + 1]], deltas[s.order[i]])) ++j;
        int32_t r2 = static_cast<int32_t>(i + j + 2);
        for (size_t t = i; t <= j; ++t) {
            ranks2[t] = r2;
            positive[t] = deltas[s.order[t]].num > 0 ? 1 : 0;
        }
        i = j + 1;
    }
    int64_t wplus2 = 0;
    for (size_t t = 0; t < kr; ++t)
        if (positive[t]) wplus2 += ranks2[t];
    wplus_out = static_cast<double>(wplus2) / 2.0;

    if (config.wilcoxon_p == WilcoxonPValue::exact_enumeration)
        return wilcoxon_exact_p(ranks2, wplus2);
    return wilcoxon_normal_p(ranks2, wplus2);
}

CvTestResult run_wilcoxon(const Ranking& p1, const Ranking& p2, const Ranking& ref,
                          const CvConfig& config, Rng& rng) {
    Scratch& s = tl_scratch;
    FoldPlan plan = make_fold_plan(p1.size(), config, rng);
    CvTestResult res;
    res.method = CvMethod::wilcoxon;
    res.folds = config.folds;
    s.deltas.clear();
    for (const Fold& f : plan.folds) {
        std::pair<double, double> srds;
        s.deltas.push_back(fold_delta(p1, p2, ref, f.rows, s, srds));
        res.fold_srds.push_back(srds);
    }
    res.p_value = p_from_deltas_wilcoxon(s.deltas, config, s, res.statistic);
    res.reject = res.p_value < config.alpha;
    return res;
}

CvTestResult run_dietterich_alpaydin(const Ranking& p1, const Ranking& p2, const Ranking& ref,
                                     const CvConfig& config, Rng& rng) {
    Scratch& s = tl_scratch;
    FoldPlan plan = make_fold_plan(p1.size(), config, rng);
    CvTestResult res;
    res.method = config.method;
    res.folds = config.folds;
    int k = config.folds;

    s.deltas.clear();
    s.deltas_c.clear();
    for (const Fold& f : plan.folds) {
        std::pair<double, double> srds;
        s.deltas.push_back(fold_delta(p1, p2, ref, f.rows, s, srds));
        res.fold_srds.push_back(srds);
        s.deltas_c.push_back(fold_delta(p1, p2, ref, f.complement, s, srds));
        res.fold_srds_complement.push_back(srds);
    }

    // s^2_i = (delta_i - delta_ic)^2 / 2; the variance sum is zero exactly
    // when every fold has delta_i == delta_ic
    bool var_zero = true;
    double ssum = 0.0;
    double sqsum = 0.0;
    for (int i = 0; i < k; ++i) {
        const Frac& a = s.deltas[static_cast<size_t>(i)];
        const Frac& b = s.deltas_c[static_cast<size_t>(i)];
        double da = static_cast<double>(a.num) / static_cast<double>(a.den);
        double db = static_cast<double>(b.num) / static_cast<double>(b.den);
        if (a.num * b.den != b.num * a.den) var_zero = false;
        double d = da - db;
        ssum += 0.5 * d * d;
        sqsum += da * da + db * db;
    }

    if (config.method == CvMethod::dietterich) {
        const Frac& d1 = s.deltas[0];
        double delta1 = static_cast<double>(d1.num) / static_cast<double>(d1.den);
        if (var_zero) {
            res.statistic = 0.0;
            res.p_value = (d1.num == 0) ? 1.0 : 0.0;
        } else {
            double t = delta1 / std::sqrt(ssum / k);
            res.statistic = t;
            res.p_value = 2.0 * (1.0 - student_t_cdf(std::fabs(t), k));
        }
    } else {
        bool num_zero = true;
        for (int i = 0; i < k; ++i)
            if (s.deltas[static_cast<size_t>(i)].num != 0 || s.deltas_c[static_cast<size_t>(i)].num != 0)
                num_zero = false;
        if (var_zero) {
            res.statistic = 0.0;
            res.p_value = num_zero ? 1.0 : 0.0;
        } else {
            double fstat = (sqsum / (2.0 * k)) / (ssum / k);
            res.statistic = fstat;
            res.p_value = 1.0 - f_cdf(fstat, 2.0 * k, static_cast<double>(k));
        }
    }
    res.reject = res.p_value < config.alpha;
    return res;
}

void check_inputs(const Ranking& p1, const Ranking& p2, const Ranking& ref) {
    if (p1.size() != p2.size() || p1.size() != ref.size())
        fail(Errc::size_mismatch, "rankings and reference differ in length");
}

} // namespace

double wilcoxon_exact_p(const std::vector<int32_t>& ranks_doubled, int64_t wplus_doubled) {
    size_t kr = ranks_doubled.size();
    if (kr == 0) return 1.0;
    if (kr > 62) fail(Errc::out_of_supported_range, "exact signed-rank enumeration limited to 62 folds");
    int64_t total2 = 0;
    for (int32_t r : ranks_doubled) total2 += r;
    // counts over achievable doubled W+ values, one rank at a time
    auto& dp = tl_scratch.dp;
    dp.assign(static_cast<size_t>(total2) + 1, 0);
    dp[0] = 1;
    int64_t reach = 0;
    for (int32_t r : ranks_doubled) {
        for (int64_t w = reach; w >= 0; --w)
            if (dp[static_cast<size_t>(w)])
                dp[static_cast<size_t>(w + r)] += dp[static_cast<size_t>(w)];
        reach += r;
    }
    // two-sided: mass at least as far from the mean T/2 as the observed W+
    int64_t dev = std::abs(2 * wplus_doubled - total2);
    uint64_t hits = 0, all = 0;
    for (int64_t w = 0; w <= total2; ++w) {
        uint64_t c = dp[static_cast<size_t>(w)];
        all += c;
        if (std::abs(2 * w - total2) >= dev) hits += c;
    }
    return static_cast<double>(hits) / static_cast<double>(all);
}

CvTestResult wilcoxon_cv(const Ranking& p1, const Ranking& p2, const Ranking& ref, const CvConfig& config) {
    check_inputs(p1, p2, ref);
    Rng rng(config.seed);
    return run_wilcoxon(p1, p2, ref, config, rng);
}

CvTestResult dietterich_cv(const Ranking& p1, const Ranking& p2, const Ranking& ref, const CvConfig& config) {
    check_inputs(p1, p2, ref);
    Rng rng(config.seed);
    return run_dietterich_alpaydin(p1, p2, ref, config, rng);
}

CvTestResult alpaydin_cv(const Ranking& p1, const Ranking& p2, const Ranking& ref, const CvConfig& config) {
    check_inputs(p1, p2, ref);
    Rng rng(config.seed);
    return run_dietterich_alpaydin(p1, p2, ref, config, rng);
}

CvTestResult run_cv_test(const Ranking& p1, const Ranking& p2, const Ranking& ref, const CvConfig& config) {
    Rng rng(config.seed);
    return run_cv_test(p1, p2, ref, config, rng);
}

CvTestResult run_cv_test(const Ranking& p1, const Ranking& p2, const Ranking& ref,
                         const CvConfig& config, Rng& rng) {
    check_inputs(p1, p2, ref);
    if (config.method == CvMethod::wilcoxon) return run_wilcoxon(p1, p2, ref, config, rng);
    return run_dietterich_alpaydin(p1, p2, ref, config, rng);
}

} // namespace srdcv
