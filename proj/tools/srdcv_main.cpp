#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "srdcv/criteria.hpp"
#include "srdcv/csv.hpp"
#include "srdcv/cv_tests.hpp"
#include "srdcv/null_dist.hpp"
#include "srdcv/scenario.hpp"
#include "srdcv/simulate.hpp"
#include "srdcv/srd.hpp"

namespace {

using namespace srdcv;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::bad_input:
        case Errc::io_error:
        case Errc::non_finite_value:
        case Errc::too_short:
            return 2;
        case Errc::unknown_column:
        case Errc::index_out_of_range:
        case Errc::missing_scenario:
            return 3;
        case Errc::invalid_folds:
        case Errc::invalid_config:
        case Errc::unsupported_size:
            return 4;
        default:
            return 1;
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct InputSpec {
    std::string path;
    std::string ref_col;
    std::string fusion;
    std::string descending; // comma list of column names, or "all"
};

struct LoadedInput {
    DataMatrix data;
    RankingMatrix rm;
    std::optional<size_t> ref_index;
};

LoadedInput load_input(const InputSpec& spec) {
    LoadedInput in{read_data_csv(spec.path), {{}, Ranking::identity(2)}, std::nullopt};

    if (!spec.descending.empty()) {
        std::vector<size_t> idx;
        if (spec.descending == "all") {
            for (size_t c = 0; c < in.data.cols(); ++c) idx.push_back(c);
        } else {
            for (const auto& name : split_list(spec.descending))
                idx.push_back(in.data.column_index(name));
        }
        for (size_t c : idx)
            for (double& v : in.data.columns[c]) v = -v;
    }

    Reference ref;
    if (!spec.ref_col.empty()) {
        size_t c = in.data.column_index(spec.ref_col);
        ref = Reference::col(c);
        in.ref_index = c;
    } else if (spec.fusion == "mean") {
        ref = Reference::mean();
    } else if (spec.fusion == "median") {
        ref = Reference::median();
    } else {
        fail(Errc::invalid_config, "need --ref-col or --fusion mean|median");
    }
    in.rm = to_ranking_matrix(in.data, ref);
    return in;
}

void add_input_options(CLI::App* cmd, InputSpec& spec) {
    cmd->add_option("--input", spec.path, "input CSV (header row, numeric cells)")->required();
    auto* refopt = cmd->add_option("--ref-col", spec.ref_col, "reference column name");
    auto* fusopt = cmd->add_option("--fusion", spec.fusion, "data fusion reference: mean|median")
                       ->check(CLI::IsMember({"mean", "median"}));
    refopt->excludes(fusopt);
    fusopt->excludes(refopt);
    cmd->add_option("--descending", spec.descending,
                    "columns where larger is better (comma list or 'all'); negated before ranking");
}

std::vector<MethodSpec> parse_methods(const std::string& arg) {
    // "all" or comma list of entries method[:k|k1-k2], e.g. "wilcoxon:5-10,alpaydin:8"
    std::vector<MethodSpec> out;
    auto add_range = [&](CvMethod m, int lo, int hi) {
        for (int k = lo; k <= hi; ++k) out.push_back({m, k});
    };
    if (arg.empty() || arg == "all") {
        add_range(CvMethod::wilcoxon, 5, 10);
        add_range(CvMethod::dietterich, 5, 10);
        add_range(CvMethod::alpaydin, 5, 10);
        return out;
    }
    for (const auto& entry : split_list(arg)) {
        auto colon = entry.find(':');
        CvMethod m = method_from_name(entry.substr(0, colon));
        if (colon == std::string::npos) {
            add_range(m, 5, 10);
            continue;
        }
        std::string span = entry.substr(colon + 1);
        auto dash = span.find('-');
        try {
            if (dash == std::string::npos) {
                int k = std::stoi(span);
                add_range(m, k, k);
            } else {
                add_range(m, std::stoi(span.substr(0, dash)), std::stoi(span.substr(dash + 1)));
            }
        } catch (const std::exception&) {
            fail(Errc::invalid_config, "bad fold spec '" + span + "'");
        }
    }
    return out;
}

std::vector<Scenario> parse_scenarios(int n, const std::string& arg) {
    auto catalog = scenario_catalog(n);
    if (arg.empty() || arg == "all") return catalog;
    std::vector<Scenario> out;
    for (const auto& entry : split_list(arg)) {
        bool found = false;
        for (const auto& s : catalog) {
            if (s.label == entry || std::to_string(s.id) == entry) {
                out.push_back(s);
                found = true;
                break;
            }
        }
        if (!found) fail(Errc::invalid_config, "unknown scenario '" + entry + "'");
    }
    return out;
}

int cmd_srd(const InputSpec& spec) {
    LoadedInput in = load_input(spec);
    std::printf("column,raw_srd,normalized_srd\n");
    for (size_t c = 0; c < in.data.cols(); ++c) {
        if (in.ref_index && *in.ref_index == c) continue;
        SrdScore s = srd(in.rm.rankings[c], in.rm.reference);
        std::printf("%s,%.1f,%.6f\n", in.data.column_names[c].c_str(), s.raw(), s.normalized);
    }
    return 0;
}

int cmd_permtest(const InputSpec& spec) {
    LoadedInput in = load_input(spec);
    std::printf("column,raw_srd,normalized_srd,p_value,xx1,median,xx19\n");
    for (size_t c = 0; c < in.data.cols(); ++c) {
        if (in.ref_index && *in.ref_index == c) continue;
        SrdScore s = srd(in.rm.rankings[c], in.rm.reference);
        PermTestResult pt = perm_test(s);
        std::printf("%s,%.1f,%.6f,%.6g,%.6f,%.6f,%.6f\n", in.data.column_names[c].c_str(), s.raw(),
                    s.normalized, pt.p_value, pt.xx1, pt.median, pt.xx19);
    }
    return 0;
}

int cmd_cvtest(const InputSpec& spec, const std::string& col_a, const std::string& col_b,
               const std::string& method, int folds, double alpha, int runs, uint64_t seed,
               bool exact_wilcoxon) {
    LoadedInput in = load_input(spec);
    const Ranking& a = in.rm.rankings[in.data.column_index(col_a)];
    const Ranking& b = in.rm.rankings[in.data.column_index(col_b)];
    if (runs < 1) fail(Errc::invalid_config, "--runs must be >= 1");

    CvConfig config;
    config.method = method_from_name(method);
    config.folds = folds;
    config.alpha = alpha;
    config.wilcoxon_p = exact_wilcoxon ? WilcoxonPValue::exact_enumeration : WilcoxonPValue::normal_approx;
    config.validate();

    int64_t rejected = 0;
    for (int r = 0; r < runs; ++r) {
        config.seed = mix_seed({seed, static_cast<uint64_t>(r)});
        if (run_cv_test(a, b, in.rm.reference, config).reject) ++rejected;
    }
    std::printf("method,folds,runs,rejection_rate_pct\n");
    std::printf("%s,%d,%d,%.4f\n", method_name(config.method), folds, runs,
                100.0 * static_cast<double>(rejected) / runs);
    return 0;
}

int cmd_simulate(int n, const std::string& scenarios, const std::string& methods, int runs,
                 int rounds, double alpha, uint64_t seed, const std::string& out_path, int threads,
                 bool quiet, bool exact_wilcoxon, bool list_scenarios) {
    if (list_scenarios) {
        std::fputs(scenario_manifest_csv(n).c_str(), stdout);
        return 0;
    }
    SimPlan plan;
    plan.n = n;
    plan.scenarios = parse_scenarios(n, scenarios);
    plan.methods = parse_methods(methods);
    plan.runs_per_round = runs;
    plan.rounds = rounds;
    plan.alpha = alpha;
    plan.master_seed = seed;
    plan.wilcoxon_p = exact_wilcoxon ? WilcoxonPValue::exact_enumeration : WilcoxonPValue::normal_approx;

    SimOptions options;
    options.threads = threads;
    options.checkpoint_path = out_path.empty() ? "" : out_path + ".partial";
    if (!quiet)
        options.progress = [](size_t cell, size_t cells, int round, int rounds_total,
                              const std::string& label) {
            std::fprintf(stderr, "[simulate] cell %zu/%zu (%s) round %d/%d\n", cell + 1, cells,
                         label.c_str(), round, rounds_total);
        };

    RejectionTable table = run_simulation(plan, options);
    if (out_path.empty()) {
        std::ostringstream ss;
        write_table_csv(table, ss);
        std::fputs(ss.str().c_str(), stdout);
    } else {
        write_table_csv(table, out_path);
        std::remove(options.checkpoint_path.c_str());
    }
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& tables, const std::string& out_prefix) {
    std::vector<SizedCriteria> sized;
    for (const auto& path : tables) {
        RejectionTable table = read_table_csv(path);
        SizedCriteria sc;
        sc.n = table.n;
        sc.criteria = all_criteria(table);
        sized.push_back(std::move(sc));

        const auto& crits = sized.back().criteria;
        std::string suffix = "_n" + std::to_string(table.n) + ".csv";
        {
            std::ofstream out(out_prefix + "criteria" + suffix);
            if (!out) fail(Errc::io_error, "cannot write " + out_prefix + "criteria" + suffix);
            out << "criterion,method,folds,raw,rank\n";
            char buf[64];
            for (const auto& c : crits)
                for (size_t m = 0; m < c.methods.size(); ++m) {
                    std::snprintf(buf, sizeof buf, "%.6f,%.1f", c.raw[m], c.ranks[m]);
                    out << c.criterion << ',' << method_name(c.methods[m].method) << ','
                        << c.methods[m].folds << ',' << buf << '\n';
                }
        }
        BordaResult b = borda(crits);
        std::ostringstream bs;
        bs << "method,folds,borda_score,final_rank\n";
        char buf[64];
        for (size_t idx : b.order) {
            std::snprintf(buf, sizeof buf, "%.1f,%.1f", b.scores[idx], b.final_ranks[idx]);
            bs << method_name(b.methods[idx].method) << ',' << b.methods[idx].folds << ',' << buf << '\n';
        }
        std::ofstream out(out_prefix + "borda" + suffix);
        if (!out) fail(Errc::io_error, "cannot write " + out_prefix + "borda" + suffix);
        out << bs.str();
        std::printf("# n=%d\n%s", table.n, bs.str().c_str());
    }

    if (sized.size() >= 2) {
        auto meta = meta_srd(sized);
        std::ofstream out(out_prefix + "meta_srd.csv");
        if (!out) fail(Errc::io_error, "cannot write " + out_prefix + "meta_srd.csv");
        out << "criterion,srd_normalized,p_value,xx1,median,xx19\n";
        char buf[128];
        for (const auto& e : meta) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6g,%.6f,%.6f,%.6f", e.srd_normalized, e.p_value,
                          e.xx1, e.median, e.xx19);
            out << e.criterion << ',' << buf << '\n';
        }
    }
    return 0;
}

int cmd_calibrate(int n, int samples, uint64_t seed) {
    Rng rng(seed);
    int x = calibrate_x(n, rng, samples);
    std::printf("n,samples,seed,x\n%d,%d,%llu,%d\n", n, samples,
                static_cast<unsigned long long>(seed), x);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SRD rank comparison with cross-validated hypothesis tests"};
    app.require_subcommand(1);

    InputSpec srd_in, perm_in, cv_in;
    auto* c_srd = app.add_subcommand("srd", "per-column SRD scores against a reference");
    add_input_options(c_srd, srd_in);

    auto* c_perm = app.add_subcommand("permtest", "SRD scores with random-ranking permutation test");
    add_input_options(c_perm, perm_in);

    auto* c_cv = app.add_subcommand("cvtest", "repeated CV test of two columns against the reference");
    add_input_options(c_cv, cv_in);
    std::string col_a, col_b, cv_method = "wilcoxon";
    int cv_folds = 8, cv_runs = 1000;
    double cv_alpha = 0.05;
    uint64_t cv_seed = 0;
    bool cv_exact = false;
    c_cv->add_option("--col-a", col_a)->required();
    c_cv->add_option("--col-b", col_b)->required();
    c_cv->add_option("--method", cv_method, "wilcoxon|dietterich|alpaydin");
    c_cv->add_option("--folds", cv_folds);
    c_cv->add_option("--alpha", cv_alpha);
    c_cv->add_option("--runs", cv_runs);
    c_cv->add_option("--seed", cv_seed);
    c_cv->add_flag("--exact-wilcoxon", cv_exact, "exact sign-enumeration Wilcoxon p-values");

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo rejection-rate tables over the scenarios");
    int sim_n = 32, sim_runs = 10000, sim_rounds = 3, sim_threads = 1;
    double sim_alpha = 0.05;
    uint64_t sim_seed = 0;
    std::string sim_scenarios = "all", sim_methods = "all", sim_out;
    bool sim_quiet = false, sim_exact = false, sim_list = false;
    c_sim->add_option("--n", sim_n, "ranking size (7 or >= 8)");
    c_sim->add_option("--scenarios", sim_scenarios, "comma list of ids/labels, or 'all'");
    c_sim->add_option("--methods", sim_methods, "e.g. 'wilcoxon:5-10,alpaydin:8' or 'all'");
    c_sim->add_option("--runs", sim_runs, "runs per round");
    c_sim->add_option("--rounds", sim_rounds);
    c_sim->add_option("--alpha", sim_alpha);
    c_sim->add_option("--seed", sim_seed);
    c_sim->add_option("--out", sim_out, "output CSV path (stdout when omitted)");
    c_sim->add_option("--threads", sim_threads);
    c_sim->add_flag("--quiet", sim_quiet, "suppress progress output");
    c_sim->add_flag("--exact-wilcoxon", sim_exact);
    c_sim->add_flag("--list-scenarios", sim_list, "print the scenario manifest and exit");

    auto* c_eval = app.add_subcommand("evaluate", "criteria + Borda aggregation from rejection tables");
    std::vector<std::string> eval_tables;
    std::string eval_prefix = "srdcv_";
    c_eval->add_option("--table", eval_tables, "rejection-rate CSV (repeat for multiple sizes)")
        ->required();
    c_eval->add_option("--out-prefix", eval_prefix);

    auto* c_cal = app.add_subcommand("calibrate", "match inversion count to the mid-swap distance");
    int cal_n = 32, cal_samples = 10000;
    uint64_t cal_seed = 0;
    c_cal->add_option("--n", cal_n)->required();
    c_cal->add_option("--samples", cal_samples);
    c_cal->add_option("--seed", cal_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_srd->parsed()) return cmd_srd(srd_in);
        if (c_perm->parsed()) return cmd_permtest(perm_in);
        if (c_cv->parsed())
            return cmd_cvtest(cv_in, col_a, col_b, cv_method, cv_folds, cv_alpha, cv_runs, cv_seed,
                              cv_exact);
        if (c_sim->parsed())
            return cmd_simulate(sim_n, sim_scenarios, sim_methods, sim_runs, sim_rounds, sim_alpha,
                                sim_seed, sim_out, sim_threads, sim_quiet, sim_exact, sim_list);
        if (c_eval->parsed()) return cmd_evaluate(eval_tables, eval_prefix);
        if (c_cal->parsed()) return cmd_calibrate(cal_n, cal_samples, cal_seed);
    } catch (const Error& e) {
        std::fprintf(stderr, "error_code=%s: %s\n", errc_name(e.code()), e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error_code=internal: %s\n", e.what());
        return 1;
    }
    return 0;
}
