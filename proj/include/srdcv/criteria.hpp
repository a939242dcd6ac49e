#pragma once

#include <string>
#include <vector>

#include "srdcv/null_dist.hpp"
#include "srdcv/simulate.hpp"

namespace srdcv {

struct CriterionScores {
    std::string criterion;              // DISC, MAXDIFF, AVGDIFF, BLNC, SRD, CEPWAVG, WTPWAVG
    bool higher_better = true;
    std::vector<MethodSpec> methods;     // canonical order (wilcoxon, dietterich, alpaydin; folds asc)
    std::vector<double> raw;
    std::vector<double> ranks;           // 1 = best, average ranks on ties
};

CriterionScores disc(const RejectionTable& table);
CriterionScores maxdiff(const RejectionTable& table);
CriterionScores avgdiff(const RejectionTable& table);
CriterionScores blnc(const RejectionTable& table);
CriterionScores srd_criterion(const RejectionTable& table);

enum class PairwiseTest { conditional_fisher, williams_t };

// Pair-correlation criteria against the per-scenario average reference;
// conditional Fisher (CEPWAVG) works on pairwise concordance counts, Williams'
// t (WTPWAVG) compares dependent correlations with the reference. Both are
// probability-weighted: each opponent contributes p(win) - p(loss).
CriterionScores pairwise_correlation(const RejectionTable& table, PairwiseTest test);

// All seven criteria in the published column order.
std::vector<CriterionScores> all_criteria(const RejectionTable& table);

struct BordaResult {
    std::vector<MethodSpec> methods; // same order as the criteria inputs
    std::vector<double> scores;      // sum over criteria of (m - rank)
    std::vector<double> final_ranks; // 1 = best, average ranks on ties
    std::vector<size_t> order;       // method indices sorted by descending score
};

BordaResult borda(const std::vector<CriterionScores>& criteria);

struct SizedCriteria {
    int n = 0;
    std::vector<CriterionScores> criteria;
};

struct MetaSrdEntry {
    std::string criterion;
    double srd_normalized = 0.0;
    double p_value = 1.0;
    double xx1 = 0.0;
    double median = 0.0;
    double xx19 = 0.0;
};

// Min-max normalizes every criterion per input size (oriented higher-better),
// stacks the sizes' method axes into one object axis, ranks against the
// criterion-average reference and scores each criterion's SRD from it.
std::vector<MetaSrdEntry> meta_srd(const std::vector<SizedCriteria>& per_size);

// Average ranks helper shared with the criteria: rank 1 goes to the largest
// value when higher_better, to the smallest otherwise.
std::vector<double> rank_with_direction(const std::vector<double>& values, bool higher_better);

} // namespace srdcv
