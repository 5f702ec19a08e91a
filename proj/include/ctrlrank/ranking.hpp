#ifndef CTRLRANK_RANKING_HPP
#define CTRLRANK_RANKING_HPP

#include <string>
#include <vector>

namespace ctrlrank {

enum class RankKind { nonlinear, linear };

/// Per-node importance values in [0,1]. `node_indices[k]` is the index of
/// the k-th ranked node in the underlying network; `scope` names the node
/// subset the ranking is defined on ("pollinators", "all", ...).
struct ImportanceRanking {
    RankKind kind = RankKind::nonlinear;
    std::vector<int> node_indices;
    std::vector<double> values;
    std::string scope = "all";

    int size() const { return static_cast<int>(values.size()); }
};

const char* to_string(RankKind k);

} // namespace ctrlrank

#endif
