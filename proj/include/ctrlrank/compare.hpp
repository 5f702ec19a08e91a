#ifndef CTRLRANK_COMPARE_HPP
#define CTRLRANK_COMPARE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ctrlrank/ranking.hpp"

namespace ctrlrank::compare {

/// Summary statistics for one nonlinear/linear ranking pair.
struct ComparisonRecord {
    std::string network_id;
    double pearson_r = 0.0;
    double cosine_d = 0.0;
    std::string scope;
    int n_scope = 0; // nodes entering the statistics
    int F = 0;
    std::string fingerprint; // parameter fingerprint of the producing run
};

/// One row of the per-node table: both importance values arranged by
/// degree. Nodes outside the comparison scope carry only the linear value
/// and are excluded from the statistics.
struct ReportRow {
    int node = 0; // index in the underlying network
    std::string label;
    int degree = 0;
    double r_nl = 0.0;
    double r_l = 0.0;
    bool in_scope = false;
};

struct Report {
    ComparisonRecord record;
    std::vector<ReportRow> rows; // degree descending, seeded tie order
};

/// Sample Pearson correlation coefficient. Throws Error when the lengths
/// differ, fewer than two points are given, or either side has zero
/// variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// 1 - x.y / (|x| |y|). Throws Error on length mismatch or a zero vector.
double cosine_distance(const std::vector<double>& x, const std::vector<double>& y);

/// Join the two rankings on the nonlinear ranking's node scope, compute
/// both statistics there, and lay out a per-node table sorted by degree
/// descending with ties shuffled by `seed`. The linear ranking must cover
/// every in-scope node (ScopeError otherwise); its out-of-scope nodes are
/// still listed, flagged.
Report build_report(const ImportanceRanking& nl, const ImportanceRanking& lin,
                    const std::vector<int>& degrees,
                    const std::vector<std::string>& labels,
                    std::uint64_t seed, const std::string& network_id = "",
                    int F = 0, const std::string& fingerprint = "");

} // namespace ctrlrank::compare

#endif
