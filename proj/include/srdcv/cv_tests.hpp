#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "srdcv/ranking.hpp"
#include "srdcv/rng.hpp"

namespace srdcv {

enum class CvMethod { wilcoxon, dietterich, alpaydin };

const char* method_name(CvMethod m);
CvMethod method_from_name(const std::string& name); // throws invalid_config

enum class WilcoxonPValue {
    normal_approx,     // two-sided z on W+, tie-corrected variance, no continuity correction
    exact_enumeration, // two-sided sign-flip enumeration over the observed rank multiset
};

struct CvConfig {
    CvMethod method = CvMethod::wilcoxon;
    int folds = 5;
    double alpha = 0.05;
    uint64_t seed = 0;
    WilcoxonPValue wilcoxon_p = WilcoxonPValue::normal_approx;

    void validate() const;
};

struct Fold {
    std::vector<int32_t> rows;       // rows the fold keeps (A_i)
    std::vector<int32_t> complement; // left-out rows (Wilcoxon) or A_i^c (Dietterich/Alpaydin)
};

struct FoldPlan {
    CvMethod method = CvMethod::wilcoxon;
    std::vector<Fold> folds;
};

// Wilcoxon: rows are shuffled once and partitioned into k leave-out blocks of
// near-equal size; fold i keeps everything outside block i. When k > n each
// fold independently bootstraps one leave-out row. Dietterich/Alpaydin: k
// independent uniform floor(n/2) / ceil(n/2) bipartitions.
FoldPlan make_fold_plan(int n, const CvConfig& config, Rng& rng);

struct CvTestResult {
    CvMethod method = CvMethod::wilcoxon;
    int folds = 0;
    double statistic = 0.0; // W+ for wilcoxon, t for dietterich, F for alpaydin
    double p_value = 1.0;
    bool reject = false;
    std::vector<std::pair<double, double>> fold_srds;            // (pi1, pi2) per fold
    std::vector<std::pair<double, double>> fold_srds_complement; // Dietterich/Alpaydin only
};

CvTestResult wilcoxon_cv(const Ranking& pi1, const Ranking& pi2, const Ranking& ref, const CvConfig&);
CvTestResult dietterich_cv(const Ranking& pi1, const Ranking& pi2, const Ranking& ref, const CvConfig&);
CvTestResult alpaydin_cv(const Ranking& pi1, const Ranking& pi2, const Ranking& ref, const CvConfig&);

CvTestResult run_cv_test(const Ranking& pi1, const Ranking& pi2, const Ranking& ref, const CvConfig&);

// Harness entry point: caller owns the random stream.
CvTestResult run_cv_test(const Ranking& pi1, const Ranking& pi2, const Ranking& ref,
                         const CvConfig& config, Rng& rng);

// Exact two-sided signed-rank p-value: the probability, over all 2^k sign
// assignments of the given (doubled) rank magnitudes, of a W+ at least as far
// from its mean as wplus_doubled. Counting is done by subset-sum DP.
double wilcoxon_exact_p(const std::vector<int32_t>& ranks_doubled, int64_t wplus_doubled);

} // namespace srdcv
