#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srdcv/errors.hpp"

namespace srdcv {

// A ranking of n objects. Ranks are positive, possibly fractional under the
// average-rank tie convention; they are stored doubled so that all rank
// arithmetic stays in exact integers (ties produce .5 ranks, nothing finer).
class Ranking {
public:
    // ranks in natural units, e.g. {1.5, 1.5, 3}
    static Ranking from_ranks(const std::vector<double>& ranks);

    // ranks in doubled units, e.g. {3, 3, 6}
    static Ranking from_doubled(std::vector<int32_t> doubled);

    static Ranking identity(int n);

    int size() const { return static_cast<int>(ranks2_.size()); }
    double rank(int i) const { return ranks2_[static_cast<size_t>(i)] / 2.0; }
    int32_t doubled(int i) const { return ranks2_[static_cast<size_t>(i)]; }
    std::span<const int32_t> doubled_ranks() const { return ranks2_; }

    // permutation of 1..n (no ties)
    bool tie_free() const;

    std::vector<double> ranks() const;

    bool operator==(const Ranking&) const = default;

private:
    explicit Ranking(std::vector<int32_t> ranks2) : ranks2_(std::move(ranks2)) {}
    void validate() const;

    std::vector<int32_t> ranks2_;
};

// Smallest value gets rank 1; tied values share the average of the ranks
// they span. All inputs must be finite, length >= 2.
Ranking rank_column(std::span<const double> values);

// Same convention applied to integer keys (used when re-ranking rank values).
std::vector<int32_t> average_ranks_doubled(std::span<const int32_t> keys);

struct DataMatrix {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns; // column-major, all of length rows
    size_t rows = 0;

    size_t cols() const { return columns.size(); }
    void validate() const;
    size_t column_index(const std::string& name) const; // throws unknown_column
};

struct Reference {
    enum class Kind { column, fusion_mean, fusion_median };
    Kind kind = Kind::column;
    size_t column = 0;

    static Reference col(size_t idx) { return {Kind::column, idx}; }
    static Reference mean() { return {Kind::fusion_mean, 0}; }
    static Reference median() { return {Kind::fusion_median, 0}; }
};

struct RankingMatrix {
    std::vector<Ranking> rankings; // one per input column
    Ranking reference;
};

RankingMatrix to_ranking_matrix(const DataMatrix& data, const Reference& ref);

// Bootstrap subsets may repeat an index; indices are 0-based here.
struct RowSubset {
    std::vector<int32_t> indices;

    void validate(int n) const;
};

// Selects the rank values at the subset's indices (with multiplicity) and
// re-ranks them densely, so the result is a valid Ranking over |subset| objects.
Ranking restrict(const Ranking& ranking, const RowSubset& subset);

} // namespace srdcv
