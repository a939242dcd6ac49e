#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "srdcv/cv_tests.hpp"
#include "srdcv/scenario.hpp"

namespace srdcv {

struct MethodSpec {
    CvMethod method = CvMethod::wilcoxon;
    int folds = 5;

    bool operator==(const MethodSpec&) const = default;
    std::string label() const;
};

struct SimPlan {
    int n = 32;
    std::vector<Scenario> scenarios;
    std::vector<MethodSpec> methods;
    int runs_per_round = 10000;
    int rounds = 3;
    double alpha = 0.05;
    uint64_t master_seed = 0;
    WilcoxonPValue wilcoxon_p = WilcoxonPValue::normal_approx;

    void validate() const;
};

struct RejectionTable {
    struct Row {
        std::string scenario;
        bool type_two = false;
        CvMethod method = CvMethod::wilcoxon;
        int folds = 0;
        double rate_pct = 0.0;
        double se_pct = 0.0;
    };

    int n = 0;
    double alpha = 0.05;
    int runs_per_round = 0;
    int rounds = 0;
    uint64_t master_seed = 0;
    std::vector<Row> rows;

    const Row* find(const std::string& scenario, CvMethod method, int folds) const;
    double rate(const std::string& scenario, CvMethod method, int folds) const; // throws missing_scenario
};

// (cells done, total cells, rounds done in current cell, total rounds, cell label)
using ProgressFn = std::function<void(size_t, size_t, int, int, const std::string&)>;

struct SimOptions {
    int threads = 1;
    ProgressFn progress;
    std::string checkpoint_path; // partial CSV rewritten after every round when set
};

// Deterministic given the plan: every run draws from a stream keyed by
// (master_seed, cell, round, run), so the worker count never changes results.
RejectionTable run_simulation(const SimPlan& plan, const SimOptions& options = {});

void write_table_csv(const RejectionTable& table, std::ostream& out);
void write_table_csv(const RejectionTable& table, const std::string& path);
RejectionTable read_table_csv(std::istream& in);
RejectionTable read_table_csv(const std::string& path);

} // namespace srdcv
