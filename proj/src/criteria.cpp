#include "srdcv/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srdcv/stats_math.hpp"

namespace srdcv {

std::vector<double> rank_with_direction(const std::vector<double>& values, bool higher_better) {
    size_t m = values.size();
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return higher_better ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(m);
    size_t i = 0;
    while (i < m) {
        size_t j = i;
        while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
        double r = static_cast<double>(i + j) / 2.0 + 1.0;
        for (size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

namespace {

// table pivoted to scenario-major form with a canonical method order
struct Pivot {
    std::vector<MethodSpec> methods;
    std::vector<std::string> scenarios;      // in first-appearance order
    std::vector<bool> type_two;              // per scenario
    std::vector<std::vector<double>> rates;  // [scenario][method]
    int rt1 = -1, rt2 = -1;                  // scenario indices of RT I / RT II
};

Pivot pivot_table(const RejectionTable& table) {
    Pivot p;
    for (const auto& r : table.rows) {
        MethodSpec m{r.method, r.folds};
        if (std::find(p.methods.begin(), p.methods.end(), m) == p.methods.end()) p.methods.push_back(m);
        if (std::find(p.scenarios.begin(), p.scenarios.end(), r.scenario) == p.scenarios.end()) {
            p.scenarios.push_back(r.scenario);
            p.type_two.push_back(r.type_two);
        }
    }
    std::sort(p.methods.begin(), p.methods.end(), [](const MethodSpec& a, const MethodSpec& b) {
        if (a.method != b.method) return a.method < b.method;
        return a.folds < b.folds;
    });
    p.rates.assign(p.scenarios.size(), std::vector<double>(p.methods.size()));
    for (size_t s = 0; s < p.scenarios.size(); ++s)
        for (size_t m = 0; m < p.methods.size(); ++m)
            p.rates[s][m] = table.rate(p.scenarios[s], p.methods[m].method, p.methods[m].folds);
    for (size_t s = 0; s < p.scenarios.size(); ++s) {
        if (p.scenarios[s] == "RT I") p.rt1 = static_cast<int>(s);
        if (p.scenarios[s] == "RT II") p.rt2 = static_cast<int>(s);
    }
    return p;
}

CriterionScores make_scores(std::string name, bool higher_better, std::vector<MethodSpec> methods,
                            std::vector<double> raw) {
    CriterionScores c;
    c.criterion = std::move(name);
    c.higher_better = higher_better;
    c.methods = std::move(methods);
    c.raw = std::move(raw);
    c.ranks = rank_with_direction(c.raw, higher_better);
    return c;
}

// best attainable rate per scenario: minimum for type I, maximum for type II
std::vector<double> best_rates(const Pivot& p) {
    std::vector<double> best(p.scenarios.size());
    for (size_t s = 0; s < p.scenarios.size(); ++s) {
        const auto& row = p.rates[s];
        best[s] = p.type_two[s] ? *std::max_element(row.begin(), row.end())
                                : *std::min_element(row.begin(), row.end());
    }
    return best;
}

void require_rt(const Pivot& p, const char* what) {
    if (p.rt1 < 0 || p.rt2 < 0)
        fail(Errc::missing_scenario, std::string(what) + " needs both RT I and RT II scenarios");
}

} // namespace

CriterionScores disc(const RejectionTable& table) {
    Pivot p = pivot_table(table);
    require_rt(p, "DISC");
    std::vector<double> raw(p.methods.size());
    for (size_t m = 0; m < p.methods.size(); ++m)
        raw[m] = std::fabs(p.rates[static_cast<size_t>(p.rt2)][m] - p.rates[static_cast<size_t>(p.rt1)][m]);
    return make_scores("DISC", true, p.methods, std::move(raw));
}

CriterionScores maxdiff(const RejectionTable& table) {
    Pivot p = pivot_table(table);
    std::vector<double> best = best_rates(p);
    std::vector<double> raw(p.methods.size(), 0.0);
    for (size_t m = 0; m < p.methods.size(); ++m)
        for (size_t s = 0; s < p.scenarios.size(); ++s)
            raw[m] = std::max(raw[m], std::fabs(p.rates[s][m] - best[s]));
    return make_scores("MAXDIFF", false, p.methods, std::move(raw));
}

CriterionScores avgdiff(const RejectionTable& table) {
    Pivot p = pivot_table(table);
    std::vector<double> best = best_rates(p);
    std::vector<double> raw(p.methods.size(), 0.0);
    for (size_t m = 0; m < p.methods.size(); ++m) {
        for (size_t s = 0; s < p.scenarios.size(); ++s) raw[m] += std::fabs(p.rates[s][m] - best[s]);
        raw[m] /= static_cast<double>(p.scenarios.size());
    }
    return make_scores("AVGDIFF", false, p.methods, std::move(raw));
}

CriterionScores blnc(const RejectionTable& table) {
    Pivot p = pivot_table(table);
    require_rt(p, "BLNC");
    std::vector<double> raw(p.methods.size());
    for (size_t m = 0; m < p.methods.size(); ++m)
        raw[m] = std::fabs(p.rates[static_cast<size_t>(p.rt1)][m] -
                           (100.0 - p.rates[static_cast<size_t>(p.rt2)][m]));
    return make_scores("BLNC", false, p.methods, std::move(raw));
}

CriterionScores srd_criterion(const RejectionTable& table) {
    Pivot p = pivot_table(table);
    if (p.scenarios.size() < 2) fail(Errc::missing_scenario, "SRD criterion needs at least 2 scenarios");
    std::vector<double> best = best_rates(p);
    Ranking ref_ranking = rank_column(best);
    int64_t denom = 2 * max_distance(static_cast<int>(p.scenarios.size()));
    std::vector<double> raw(p.methods.size());
    std::vector<double> column(p.scenarios.size());
    for (size_t m = 0; m < p.methods.size(); ++m) {
        for (size_t s = 0; s < p.scenarios.size(); ++s) column[s] = p.rates[s][m];
        Ranking rm = rank_column(column);
        raw[m] = static_cast<double>(distance_doubled(rm, ref_ranking)) / static_cast<double>(denom);
    }
    return make_scores("SRD", false, p.methods, std::move(raw));
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    size_t n = a.size();
    double ma = 0, mb = 0;
    for (size_t i = 0; i < n; ++i) { ma += a[i]; mb += b[i]; }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0, saa = 0, sbb = 0;
    for (size_t i = 0; i < n; ++i) {
        double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Williams' test for two correlations with a shared variable
double williams_t(double r13, double r23, double r12, int n) {
    double det = 1.0 - r13 * r13 - r23 * r23 - r12 * r12 + 2.0 * r13 * r23 * r12;
    det = std::max(det, 0.0);
    double rbar = 0.5 * (r13 + r23);
    double om = 1.0 - r12;
    double den = 2.0 * det * (n - 1.0) / (n - 3.0) + rbar * rbar * om * om * om;
    if (den <= 0.0) return 0.0;
    return (r13 - r23) * std::sqrt((n - 1.0) * (1.0 + r12) / den);
}

// P(win) - P(loss) for the sign test on (B, C) under Bin(B+C, 1/2)
double signed_binomial(int B, int C) {
    int n = B + C;
    if (n == 0) return 0.0;
    // pascal row in uint64; n <= C(objects, 2) stays well under 2^53 here
    std::vector<double> comb(static_cast<size_t>(n) + 1);
    comb[0] = 1.0;
    for (int i = 1; i <= n; ++i)
        comb[static_cast<size_t>(i)] =
            comb[static_cast<size_t>(i - 1)] * (n - i + 1) / static_cast<double>(i);
    double lo = 0, hi = 0;
    for (int i = 0; i < B; ++i) lo += comb[static_cast<size_t>(i)];
    for (int i = B + 1; i <= n; ++i) hi += comb[static_cast<size_t>(i)];
    return (lo - hi) / std::pow(2.0, n);
}

// pairs (s, t) on which the method fails to order scenarios strictly as the
// reference does; bit s*S+t set for s < t
std::vector<bool> discordance_mask(const std::vector<double>& col, const std::vector<double>& ref) {
    size_t S = col.size();
    std::vector<bool> bad(S * S, false);
    for (size_t s = 0; s + 1 < S; ++s)
        for (size_t t = s + 1; t < S; ++t)
            if ((col[s] - col[t]) * (ref[s] - ref[t]) <= 0.0) bad[s * S + t] = true;
    return bad;
}

} // namespace

CriterionScores pairwise_correlation(const RejectionTable& table, PairwiseTest test) {
    Pivot p = pivot_table(table);
    size_t M = p.methods.size();
    size_t S = p.scenarios.size();
    if (S < 2) fail(Errc::missing_scenario, "pairwise criteria need at least 2 scenarios");
    if (M < 2) fail(Errc::method_set_mismatch, "pairwise criteria need at least 2 methods");

    std::vector<double> ref(S);
    for (size_t s = 0; s < S; ++s) {
        double sum = 0;
        for (size_t m = 0; m < M; ++m) sum += p.rates[s][m];
        ref[s] = sum / static_cast<double>(M);
    }
    std::vector<std::vector<double>> cols(M, std::vector<double>(S));
    for (size_t m = 0; m < M; ++m)
        for (size_t s = 0; s < S; ++s) cols[m][s] = p.rates[s][m];

    std::vector<double> raw(M, 0.0);
    if (test == PairwiseTest::conditional_fisher) {
        std::vector<std::vector<bool>> bad(M);
        for (size_t m = 0; m < M; ++m) bad[m] = discordance_mask(cols[m], ref);
        for (size_t m = 0; m < M; ++m) {
            double total = 0.0;
            for (size_t o = 0; o < M; ++o) {
                if (o == m) continue;
                int B = 0, C = 0;
                for (size_t idx = 0; idx < S * S; ++idx) {
                    bool bm = bad[m][idx], bo = bad[o][idx];
                    if (idx / S >= idx % S) continue;
                    if (!bm && bo) ++B;
                    else if (bm && !bo) ++C;
                }
                total += signed_binomial(B, C);
            }
            raw[m] = total / static_cast<double>(M - 1);
        }
        return make_scores("CEPWAVG", true, p.methods, std::move(raw));
    }

    if (S < 4) fail(Errc::missing_scenario, "Williams' t needs at least 4 scenarios");
    std::vector<double> r_ref(M);
    for (size_t m = 0; m < M; ++m) r_ref[m] = pearson(cols[m], ref);
    int nobj = static_cast<int>(S);
    for (size_t m = 0; m < M; ++m) {
        double total = 0.0;
        for (size_t o = 0; o < M; ++o) {
            if (o == m) continue;
            double r12 = pearson(cols[m], cols[o]);
            double t = williams_t(r_ref[m], r_ref[o], r12, nobj);
            total += 2.0 * student_t_cdf(t, nobj - 3.0) - 1.0;
        }
        raw[m] = total / static_cast<double>(M - 1);
    }
    return make_scores("WTPWAVG", true, p.methods, std::move(raw));
}

std::vector<CriterionScores> all_criteria(const RejectionTable& table) {
    std::vector<CriterionScores> out;
    out.push_back(disc(table));
    out.push_back(maxdiff(table));
    out.push_back(avgdiff(table));
    out.push_back(blnc(table));
    out.push_back(srd_criterion(table));
    out.push_back(pairwise_correlation(table, PairwiseTest::conditional_fisher));
    out.push_back(pairwise_correlation(table, PairwiseTest::williams_t));
    return out;
}

BordaResult borda(const std::vector<CriterionScores>& criteria) {
    if (criteria.empty()) fail(Errc::method_set_mismatch, "Borda needs at least one criterion");
    const auto& methods = criteria.front().methods;
    for (const auto& c : criteria)
        if (c.methods != methods)
            fail(Errc::method_set_mismatch, "criteria cover different method sets");

    BordaResult res;
    res.methods = methods;
    size_t m = methods.size();
    res.scores.assign(m, 0.0);
    for (const auto& c : criteria)
        for (size_t i = 0; i < m; ++i) res.scores[i] += static_cast<double>(m) - c.ranks[i];
    res.final_ranks = rank_with_direction(res.scores, true);
    res.order.resize(m);
    std::iota(res.order.begin(), res.order.end(), 0);
    std::sort(res.order.begin(), res.order.end(), [&](size_t a, size_t b) {
        if (res.scores[a] != res.scores[b]) return res.scores[a] > res.scores[b];
        if (methods[a].method != methods[b].method) return methods[a].method < methods[b].method;
        return methods[a].folds < methods[b].folds;
    });
    return res;
}

std::vector<MetaSrdEntry> meta_srd(const std::vector<SizedCriteria>& per_size) {
    if (per_size.empty()) fail(Errc::shape_mismatch, "meta SRD needs at least one table");
    size_t ncrit = per_size.front().criteria.size();
    if (ncrit < 2) fail(Errc::shape_mismatch, "meta SRD needs at least 2 criteria");
    for (const auto& sz : per_size) {
        if (sz.criteria.size() != ncrit) fail(Errc::shape_mismatch, "criterion lists differ across sizes");
        for (size_t c = 0; c < ncrit; ++c) {
            if (sz.criteria[c].criterion != per_size.front().criteria[c].criterion)
                fail(Errc::shape_mismatch, "criterion order differs across sizes");
            if (sz.criteria[c].methods != sz.criteria.front().methods)
                fail(Errc::method_set_mismatch, "method sets differ within a size");
        }
    }

    // stack sizes: one object per (size, method), normalized higher-better
    std::vector<std::vector<double>> stacked(ncrit);
    for (const auto& sz : per_size) {
        for (size_t c = 0; c < ncrit; ++c) {
            const auto& crit = sz.criteria[c];
            double lo = *std::min_element(crit.raw.begin(), crit.raw.end());
            double hi = *std::max_element(crit.raw.begin(), crit.raw.end());
            for (double v : crit.raw) {
                double x = (hi > lo) ? (v - lo) / (hi - lo) : 0.0;
                stacked[c].push_back(crit.higher_better ? x : 1.0 - x);
            }
        }
    }
    size_t objects = stacked.front().size();
    if (objects < 2) fail(Errc::shape_mismatch, "meta SRD needs at least 2 objects");

    std::vector<double> reference(objects, 0.0);
    for (size_t c = 0; c < ncrit; ++c)
        for (size_t o = 0; o < objects; ++o) reference[o] += stacked[c][o];
    for (double& v : reference) v /= static_cast<double>(ncrit);

    Ranking ref_ranking = rank_column(reference);
    std::vector<MetaSrdEntry> out;
    out.reserve(ncrit);
    for (size_t c = 0; c < ncrit; ++c) {
        Ranking rc = rank_column(stacked[c]);
        SrdScore score = srd(rc, ref_ranking);
        PermTestResult pt = perm_test(score);
        MetaSrdEntry e;
        e.criterion = per_size.front().criteria[c].criterion;
        e.srd_normalized = score.normalized;
        e.p_value = pt.p_value;
        e.xx1 = pt.xx1;
        e.median = pt.median;
        e.xx19 = pt.xx19;
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace srdcv
