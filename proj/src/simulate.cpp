#include "srdcv/simulate.hpp"

#include <atomic>
#include <mutex>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace srdcv {

std::string MethodSpec::label() const {
    return std::string(method_name(method)) + " " + std::to_string(folds);
}

void SimPlan::validate() const {
    if (scenarios.empty()) fail(Errc::invalid_config, "simulation plan has no scenarios");
    if (methods.empty()) fail(Errc::invalid_config, "simulation plan has no methods");
    if (runs_per_round < 1) fail(Errc::invalid_config, "runs_per_round must be >= 1");
    if (rounds < 1) fail(Errc::invalid_config, "rounds must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::invalid_config, "alpha must be in (0, 1)");
    for (const auto& s : scenarios)
        if (s.n != n) fail(Errc::invalid_config, "scenario size does not match plan size");
    for (const auto& m : methods) {
        CvConfig c;
        c.method = m.method;
        c.folds = m.folds;
        c.alpha = alpha;
        c.validate();
    }
}

const RejectionTable::Row* RejectionTable::find(const std::string& scenario, CvMethod method,
                                                int folds) const {
    for (const auto& r : rows)
        if (r.scenario == scenario && r.method == method && r.folds == folds) return &r;
    return nullptr;
}

double RejectionTable::rate(const std::string& scenario, CvMethod method, int folds) const {
    const Row* r = find(scenario, method, folds);
    if (!r)
        fail(Errc::missing_scenario,
             "no cell for scenario '" + scenario + "', " + method_name(method) + " " + std::to_string(folds));
    return r->rate_pct;
}

namespace {

uint64_t cell_key(const Scenario& s, const MethodSpec& m) {
    return (static_cast<uint64_t>(s.id) << 12) | (static_cast<uint64_t>(m.method) << 8) |
           static_cast<uint64_t>(m.folds);
}

// one (cell, round): counts rejections over [0, runs)
int64_t run_round(const SimPlan& plan, const Scenario& scenario, const MethodSpec& method,
                  int round, int threads) {
    CvConfig config;
    config.method = method.method;
    config.folds = method.folds;
    config.alpha = plan.alpha;
    config.wilcoxon_p = plan.wilcoxon_p;

    const uint64_t key = cell_key(scenario, method);
    const int runs = plan.runs_per_round;
    const Ranking ref = Ranking::identity(plan.n);

    // fixed chunking keeps per-chunk sums identical for any worker count
    const int chunk = 256;
    const int nchunks = (runs + chunk - 1) / chunk;
    std::vector<int64_t> partial(static_cast<size_t>(nchunks), 0);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;

    auto worker = [&]() {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= nchunks || failed.load()) return;
            int lo = c * chunk;
            int hi = std::min(runs, lo + chunk);
            int64_t rejected = 0;
            try {
                for (int run = lo; run < hi; ++run) {
                    Rng rng(mix_seed({plan.master_seed, key, static_cast<uint64_t>(round),
                                      static_cast<uint64_t>(run)}));
                    auto [a, b] = sample_scenario_pair(scenario, rng);
                    CvTestResult res = run_cv_test(a, b, ref, config, rng);
                    if (res.reject) ++rejected;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error_message = e.what();
                return;
            }
            partial[static_cast<size_t>(c)] = rejected;
        }
    };

    int nthreads = std::max(1, std::min(threads, nchunks));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load())
        fail(Errc::invalid_config, "cell " + scenario.label + " " + method.label() +
                                       " aborted: " + error_message);
    int64_t total = 0;
    for (int64_t p : partial) total += p;
    return total;
}

RejectionTable::Row summarize(const Scenario& scenario, const MethodSpec& method,
                              const std::vector<double>& round_pcts) {
    RejectionTable::Row row;
    row.scenario = scenario.label;
    row.type_two = scenario.type_two;
    row.method = method.method;
    row.folds = method.folds;
    double mean = 0.0;
    for (double p : round_pcts) mean += p;
    mean /= static_cast<double>(round_pcts.size());
    row.rate_pct = mean;
    if (round_pcts.size() > 1) {
        double ss = 0.0;
        for (double p : round_pcts) ss += (p - mean) * (p - mean);
        double sd = std::sqrt(ss / static_cast<double>(round_pcts.size() - 1));
        row.se_pct = sd / std::sqrt(static_cast<double>(round_pcts.size()));
    }
    return row;
}

void write_checkpoint(const RejectionTable& done, const std::string& path) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::trunc);
    if (!out) return; // checkpointing is best-effort
    write_table_csv(done, out);
}

} // namespace

RejectionTable run_simulation(const SimPlan& plan, const SimOptions& options) {
    plan.validate();
    RejectionTable table;
    table.n = plan.n;
    table.alpha = plan.alpha;
    table.runs_per_round = plan.runs_per_round;
    table.rounds = plan.rounds;
    table.master_seed = plan.master_seed;

    size_t total_cells = plan.scenarios.size() * plan.methods.size();
    size_t done = 0;
    for (const Scenario& scenario : plan.scenarios) {
        for (const MethodSpec& method : plan.methods) {
            std::vector<double> round_pcts;
            round_pcts.reserve(static_cast<size_t>(plan.rounds));
            for (int round = 0; round < plan.rounds; ++round) {
                int64_t rejected = run_round(plan, scenario, method, round, options.threads);
                round_pcts.push_back(100.0 * static_cast<double>(rejected) / plan.runs_per_round);
                if (options.progress)
                    options.progress(done, total_cells, round + 1, plan.rounds,
                                     scenario.label + " " + method.label());
                if (!options.checkpoint_path.empty()) {
                    RejectionTable partial = table;
                    partial.rows.push_back(summarize(scenario, method, round_pcts));
                    partial.rounds = plan.rounds;
                    write_checkpoint(partial, options.checkpoint_path);
                }
            }
            table.rows.push_back(summarize(scenario, method, round_pcts));
            ++done;
        }
    }
    return table;
}

void write_table_csv(const RejectionTable& table, std::ostream& out) {
    out << "n,scenario,type,method,folds,alpha,runs_per_round,rounds,"
           "rejection_rate_pct,round_se_pct,master_seed\n";
    char buf[64];
    for (const auto& r : table.rows) {
        out << table.n << ',' << r.scenario << ',' << (r.type_two ? "II" : "I") << ','
            << method_name(r.method) << ',' << r.folds << ',';
        std::snprintf(buf, sizeof buf, "%g", table.alpha);
        out << buf << ',' << table.runs_per_round << ',' << table.rounds << ',';
        std::snprintf(buf, sizeof buf, "%.4f", r.rate_pct);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.4f", r.se_pct);
        out << buf << ',' << table.master_seed << '\n';
    }
}

void write_table_csv(const RejectionTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    write_table_csv(table, out);
    if (!out.good()) fail(Errc::io_error, "write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

template <typename T>
T parse_num(const std::string& s, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(Errc::bad_input, std::string("bad ") + what + " value '" + s + "'");
    return value;
}

double parse_double(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(Errc::bad_input, std::string("bad ") + what + " value '" + s + "'");
    }
}

} // namespace

RejectionTable read_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::bad_input, "empty rejection table");
    const std::string expected =
        "n,scenario,type,method,folds,alpha,runs_per_round,rounds,"
        "rejection_rate_pct,round_se_pct,master_seed";
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) fail(Errc::bad_input, "unexpected rejection table header");

    RejectionTable table;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_line(line);
        if (f.size() != 11) fail(Errc::bad_input, "rejection table row needs 11 fields");
        int n = parse_num<int>(f[0], "n");
        double alpha = parse_double(f[5], "alpha");
        int runs = parse_num<int>(f[6], "runs_per_round");
        int rounds = parse_num<int>(f[7], "rounds");
        uint64_t seed = parse_num<uint64_t>(f[10], "master_seed");
        if (first) {
            table.n = n;
            table.alpha = alpha;
            table.runs_per_round = runs;
            table.rounds = rounds;
            table.master_seed = seed;
            first = false;
        } else if (n != table.n || runs != table.runs_per_round || rounds != table.rounds ||
                   alpha != table.alpha || seed != table.master_seed) {
            fail(Errc::bad_input, "inconsistent table-level fields across rows");
        }
        RejectionTable::Row row;
        row.scenario = f[1];
        if (f[2] == "I") row.type_two = false;
        else if (f[2] == "II") row.type_two = true;
        else fail(Errc::bad_input, "scenario type must be I or II");
        row.method = method_from_name(f[3]);
        row.folds = parse_num<int>(f[4], "folds");
        row.rate_pct = parse_double(f[8], "rejection_rate_pct");
        row.se_pct = parse_double(f[9], "round_se_pct");
        table.rows.push_back(std::move(row));
    }
    return table;
}

RejectionTable read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
    return read_table_csv(in);
}

} // namespace srdcv
