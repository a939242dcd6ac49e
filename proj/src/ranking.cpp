#include "srdcv/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srdcv {

Ranking Ranking::from_ranks(const std::vector<double>& ranks) {
    std::vector<int32_t> d;
    d.reserve(ranks.size());
    for (double r : ranks) {
        double twice = r * 2.0;
        double rounded = std::nearbyint(twice);
        if (!std::isfinite(r) || std::fabs(twice - rounded) > 1e-9)
            fail(Errc::bad_input, "rank values must be integers or halves");
        d.push_back(static_cast<int32_t>(rounded));
    }
    return from_doubled(std::move(d));
}

Ranking Ranking::from_doubled(std::vector<int32_t> doubled) {
    Ranking r(std::move(doubled));
    r.validate();
    return r;
}

Ranking Ranking::identity(int n) {
    if (n < 2) fail(Errc::too_short, "ranking needs at least 2 objects");
    std::vector<int32_t> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = 2 * (i + 1);
    return Ranking(std::move(d));
}

void Ranking::validate() const {
    int n = size();
    if (n < 2) fail(Errc::too_short, "ranking needs at least 2 objects");
    int64_t sum = 0;
    for (int32_t r : ranks2_) {
        if (r < 2 || r > 2 * n) fail(Errc::bad_input, "rank outside [1, n]");
        sum += r;
    }
    // sum of ranks must be n(n+1)/2, i.e. doubled sum n(n+1)
    if (sum != static_cast<int64_t>(n) * (n + 1))
        fail(Errc::bad_input, "rank sum violates the average-rank convention");
}

bool Ranking::tie_free() const {
    std::vector<bool> seen(ranks2_.size() + 1, false);
    for (int32_t r : ranks2_) {
        if (r % 2 != 0) return false;
        size_t v = static_cast<size_t>(r / 2);
        if (v > ranks2_.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

std::vector<double> Ranking::ranks() const {
    std::vector<double> out;
    out.reserve(ranks2_.size());
    for (int32_t r : ranks2_) out.push_back(r / 2.0);
    return out;
}

namespace {

template <typename T>
std::vector<int32_t> average_ranks_impl(std::span<const T> keys) {
    size_t n = keys.size();
    std::vector<int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) { return keys[a] < keys[b]; });
    std::vector<int32_t> out(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && keys[order[j + 1]] == keys[order[i]]) ++j;
        // doubled average of 1-based ranks i+1 .. j+1
        int32_t r2 = static_cast<int32_t>(i + j + 2);
        for (size_t t = i; t <= j; ++t) out[order[t]] = r2;
        i = j + 1;
    }
    return out;
}

} // namespace

Ranking rank_column(std::span<const double> values) {
    if (values.size() < 2) fail(Errc::too_short, "need at least 2 values to rank");
    for (double v : values)
        if (!std::isfinite(v)) fail(Errc::non_finite_value, "cannot rank NaN or infinite values");
    return Ranking::from_doubled(average_ranks_impl<double>(values));
}

std::vector<int32_t> average_ranks_doubled(std::span<const int32_t> keys) {
    return average_ranks_impl<int32_t>(keys);
}

void DataMatrix::validate() const {
    if (rows < 2) fail(Errc::too_short, "data matrix needs at least 2 rows");
    if (columns.empty()) fail(Errc::bad_input, "data matrix needs at least 1 column");
    if (column_names.size() != columns.size())
        fail(Errc::bad_input, "column name count does not match column count");
    for (size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) fail(Errc::bad_input, "ragged column " + column_names[c]);
        for (double v : columns[c])
            if (!std::isfinite(v))
                fail(Errc::non_finite_value, "non-finite entry in column " + column_names[c]);
    }
}

size_t DataMatrix::column_index(const std::string& name) const {
    for (size_t c = 0; c < column_names.size(); ++c)
        if (column_names[c] == name) return c;
    fail(Errc::unknown_column, "no column named '" + name + "'");
}

RankingMatrix to_ranking_matrix(const DataMatrix& data, const Reference& ref) {
    data.validate();
    std::vector<Ranking> rankings;
    rankings.reserve(data.cols());
    for (const auto& col : data.columns) rankings.push_back(rank_column(col));

    if (ref.kind == Reference::Kind::column) {
        if (ref.column >= data.cols()) fail(Errc::index_out_of_range, "reference column out of range");
        Ranking reference = rankings[ref.column];
        return {std::move(rankings), std::move(reference)};
    }

    std::vector<double> fused(data.rows);
    std::vector<double> row(data.cols());
    for (size_t r = 0; r < data.rows; ++r) {
        for (size_t c = 0; c < data.cols(); ++c) row[c] = data.columns[c][r];
        if (ref.kind == Reference::Kind::fusion_mean) {
            double s = 0;
            for (double v : row) s += v;
            fused[r] = s / static_cast<double>(row.size());
        } else {
            std::sort(row.begin(), row.end());
            size_t m = row.size();
            fused[r] = (m % 2 == 1) ? row[m / 2] : 0.5 * (row[m / 2 - 1] + row[m / 2]);
        }
    }
    Ranking reference = rank_column(fused);
    return {std::move(rankings), std::move(reference)};
}

void RowSubset::validate(int n) const {
    if (indices.size() < 2) fail(Errc::too_short, "row subset needs at least 2 indices");
    for (int32_t i : indices)
        if (i < 0 || i >= n) fail(Errc::index_out_of_range, "row index out of range");
}

Ranking restrict(const Ranking& ranking, const RowSubset& subset) {
    subset.validate(ranking.size());
    std::vector<int32_t> vals;
    vals.reserve(subset.indices.size());
    for (int32_t i : subset.indices) vals.push_back(ranking.doubled(i));
    return Ranking::from_doubled(average_ranks_doubled(vals));
}

} // namespace srdcv
