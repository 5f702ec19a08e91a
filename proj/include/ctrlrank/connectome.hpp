#ifndef CTRLRANK_CONNECTOME_HPP
#define CTRLRANK_CONNECTOME_HPP

#include <map>
#include <string>
#include <vector>

#include "ctrlrank/netio.hpp"
#include "ctrlrank/ranking.hpp"

namespace ctrlrank::connectome {

// Path counts grow combinatorially; 128-bit counters hold every case this
// toolkit targets, with explicit overflow checks on the way up.
using count_t = unsigned __int128;

std::string count_to_string(count_t value);

enum class PathMode { walks, simple_paths };

/// counts[s][t] = number of directed source->target routes of length
/// 1..max_length from sources[s] to targets[t], in the given mode.
struct PathCountMatrix {
    std::vector<int> sources;
    std::vector<int> targets;
    std::vector<std::vector<count_t>> counts;
    int max_length = 0;
    PathMode mode = PathMode::walks;
};

/// Walks of length 1..L counted exactly by repeated integer matrix-vector
/// products on the binarized adjacency. Throws OverflowError if any count
/// would exceed the counter width.
PathCountMatrix count_walks(const netio::DirectedNetwork& net,
                            const std::vector<int>& sources,
                            const std::vector<int>& targets, int L);

/// Node-repetition-free directed paths of length 1..L (L <= 8) by
/// depth-limited search. Closed walks are not counted.
count_t count_simple_paths(const netio::DirectedNetwork& net, int source,
                           int target, int L);

/// Matrix form of count_simple_paths over source/target lists.
PathCountMatrix count_simple_paths_matrix(const netio::DirectedNetwork& net,
                                          const std::vector<int>& sources,
                                          const std::vector<int>& targets, int L);

/// Arithmetic mean of the ranking values per node class, over the classes
/// present among the ranked nodes. Throws Error on an empty ranking or
/// when a ranked node has no class tag.
std::map<netio::NodeClass, double>
class_mean_importance(const ImportanceRanking& ranking,
                      const std::vector<netio::NodeClass>& classes);

} // namespace ctrlrank::connectome

#endif
