#include "ctrlrank/connectome.hpp"

#include <algorithm>
#include <string>

#include "ctrlrank/errors.hpp"

namespace ctrlrank::connectome {

namespace {

count_t checked_add(count_t a, count_t b) {
    count_t s = a + b;
    if (s < a) throw OverflowError("path count exceeds 128-bit range");
    return s;
}

std::vector<std::vector<int>> out_lists(const netio::DirectedNetwork& net) {
    const int n = net.size();
    std::vector<std::vector<int>> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (net.adjacency(i, j) != 0.0) out[j].push_back(i); // j -> i
    return out;
}

void check_node(const netio::DirectedNetwork& net, int v, const char* what) {
    if (v < 0 || v >= net.size())
        throw Error(std::string(what) + " index " + std::to_string(v) + " out of range");
}

} // namespace

std::string count_to_string(count_t value) {
    if (value == 0) return "0";
    std::string s;
    while (value > 0) {
        s += static_cast<char>('0' + static_cast<int>(value % 10));
        value /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

PathCountMatrix count_walks(const netio::DirectedNetwork& net,
                            const std::vector<int>& sources,
                            const std::vector<int>& targets, int L) {
    if (L < 1) throw Error("walk length bound must be at least 1");
    for (int s : sources) check_node(net, s, "source");
    for (int t : targets) check_node(net, t, "target");

    const int n = net.size();
    const auto out = out_lists(net);

    PathCountMatrix result;
    result.sources = sources;
    result.targets = targets;
    result.max_length = L;
    result.mode = PathMode::walks;
    result.counts.assign(sources.size(), std::vector<count_t>(targets.size(), 0));

    // v_l = A^l e_s computed by source, so entry t accumulates the number
    // of s -> t walks of each length.
    std::vector<count_t> v(n), next(n);
    for (std::size_t si = 0; si < sources.size(); ++si) {
        std::fill(v.begin(), v.end(), count_t{0});
        v[sources[si]] = 1;
        for (int l = 1; l <= L; ++l) {
            std::fill(next.begin(), next.end(), count_t{0});
            for (int j = 0; j < n; ++j) {
                if (v[j] == 0) continue;
                for (int i : out[j]) next[i] = checked_add(next[i], v[j]);
            }
            v.swap(next);
            for (std::size_t ti = 0; ti < targets.size(); ++ti)
                result.counts[si][ti] = checked_add(result.counts[si][ti], v[targets[ti]]);
        }
    }
    return result;
}

count_t count_simple_paths(const netio::DirectedNetwork& net, int source,
                           int target, int L) {
    if (L < 1) throw Error("path length bound must be at least 1");
    if (L > 8) throw Error("simple-path search is bounded at length 8");
    check_node(net, source, "source");
    check_node(net, target, "target");

    const auto out = out_lists(net);
    std::vector<char> visited(net.size(), 0);
    count_t total = 0;

    // Depth-limited DFS; the source may not be revisited, so closed walks
    // are never counted.
    struct Walker {
        const std::vector<std::vector<int>>& out;
        std::vector<char>& visited;
        int target, limit;
        count_t& total;
        void go(int v, int depth) {
            for (int w : out[v]) {
                if (visited[w]) continue;
                if (w == target) {
                    total = checked_add(total, 1);
                    continue; // a simple path ends here
                }
                if (depth + 1 < limit) {
                    visited[w] = 1;
                    go(w, depth + 1);
                    visited[w] = 0;
                }
            }
        }
    } walker{out, visited, target, L, total};

    visited[source] = 1;
    walker.go(source, 0);
    return total;
}

PathCountMatrix count_simple_paths_matrix(const netio::DirectedNetwork& net,
                                          const std::vector<int>& sources,
                                          const std::vector<int>& targets, int L) {
    if (L < 1) throw Error("path length bound must be at least 1");
    if (L > 8) throw Error("simple-path search is bounded at length 8");
    for (int s : sources) check_node(net, s, "source");
    for (int t : targets) check_node(net, t, "target");

    PathCountMatrix result;
    result.sources = sources;
    result.targets = targets;
    result.max_length = L;
    result.mode = PathMode::simple_paths;
    result.counts.assign(sources.size(), std::vector<count_t>(targets.size(), 0));

    // One DFS per source: every DFS node visit is a distinct simple path
    // ending there, so per-node visit counts cover all targets at once.
    const auto out = out_lists(net);
    std::vector<char> visited(net.size(), 0);
    std::vector<count_t> ends(net.size(), 0);

    struct Walker {
        const std::vector<std::vector<int>>& out;
        std::vector<char>& visited;
        std::vector<count_t>& ends;
        int limit;
        void go(int v, int depth) {
            for (int w : out[v]) {
                if (visited[w]) continue;
                ends[w] = checked_add(ends[w], 1);
                if (depth + 1 < limit) {
                    visited[w] = 1;
                    go(w, depth + 1);
                    visited[w] = 0;
                }
            }
        }
    } walker{out, visited, ends, L};

    for (std::size_t si = 0; si < sources.size(); ++si) {
        std::fill(ends.begin(), ends.end(), count_t{0});
        std::fill(visited.begin(), visited.end(), 0);
        visited[sources[si]] = 1;
        walker.go(sources[si], 0);
        for (std::size_t ti = 0; ti < targets.size(); ++ti)
            result.counts[si][ti] = ends[targets[ti]];
    }
    return result;
}

std::map<netio::NodeClass, double>
class_mean_importance(const ImportanceRanking& ranking,
                      const std::vector<netio::NodeClass>& classes) {
    if (ranking.size() == 0) throw Error("cannot average an empty ranking");
    std::map<netio::NodeClass, std::pair<double, int>> acc;
    for (int k = 0; k < ranking.size(); ++k) {
        const int node = ranking.node_indices[k];
        if (node < 0 || node >= static_cast<int>(classes.size()))
            throw Error("ranked node " + std::to_string(node) + " has no class tag");
        auto& slot = acc[classes[node]];
        slot.first += ranking.values[k];
        slot.second += 1;
    }
    std::map<netio::NodeClass, double> means;
    for (const auto& [cls, slot] : acc)
        means[cls] = slot.first / slot.second;
    return means;
}

} // namespace ctrlrank::connectome
