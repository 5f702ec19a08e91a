#include "ctrlrank/netio.hpp"
#include "ctrlrank/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ctrlrank::netio {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& cell, int row, int col) {
    const std::string t = trim(cell);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError("non-numeric cell '" + cell + "' at body row " +
                         std::to_string(row + 1) + ", column " + std::to_string(col + 1));
    return value;
}

} // namespace

const char* to_string(NodeClass c) {
    switch (c) {
        case NodeClass::sensory: return "sensory";
        case NodeClass::inter: return "inter";
        case NodeClass::motor: return "motor";
        case NodeClass::muscle: return "muscle";
        case NodeClass::gene: return "gene";
        case NodeClass::pollinator: return "pollinator";
        case NodeClass::plant: return "plant";
    }
    return "?";
}

std::optional<NodeClass> node_class_from_string(const std::string& s) {
    static const std::map<std::string, NodeClass> table = {
        {"sensory", NodeClass::sensory}, {"inter", NodeClass::inter},
        {"motor", NodeClass::motor},     {"muscle", NodeClass::muscle},
        {"gene", NodeClass::gene},       {"pollinator", NodeClass::pollinator},
        {"plant", NodeClass::plant},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

BipartiteNetwork parse_incidence(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream iss(text);
        std::string line;
        while (std::getline(iss, line)) {
            if (!trim(line).empty()) lines.push_back(line);
        }
    }
    if (lines.size() < 2)
        throw ParseError("incidence CSV needs a header row and at least one body row");

    BipartiteNetwork net;
    std::vector<std::string> header = split_csv_line(lines[0]);
    if (header.size() < 2)
        throw ParseError("incidence CSV header names no plants");
    net.plant_labels.assign(header.begin() + 1, header.end());
    const int n_plants = static_cast<int>(net.plant_labels.size());
    const int n_poll = static_cast<int>(lines.size()) - 1;

    net.incidence.resize(n_poll, n_plants);
    for (int i = 0; i < n_poll; ++i) {
        std::vector<std::string> cells = split_csv_line(lines[i + 1]);
        if (static_cast<int>(cells.size()) != n_plants + 1)
            throw ParseError("incidence CSV body row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size() - 1) + " cells, expected " +
                             std::to_string(n_plants));
        net.pollinator_labels.push_back(cells[0]);
        for (int k = 0; k < n_plants; ++k)
            net.incidence(i, k) = parse_number(cells[k + 1], i, k) > 0.0 ? 1.0 : 0.0;
    }

    for (int i = 0; i < n_poll; ++i)
        if (net.incidence.row(i).sum() == 0.0)
            throw ParseError("pollinator '" + net.pollinator_labels[i] + "' has no links");
    for (int k = 0; k < n_plants; ++k)
        if (net.incidence.col(k).sum() == 0.0)
            throw ParseError("plant '" + net.plant_labels[k] + "' has no links");
    return net;
}

DirectedNetwork parse_edge_list(const std::string& text) {
    struct Edge {
        int src, dst;
        double w;
    };
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index_of;
    std::unordered_map<std::string, std::string> class_of;
    std::unordered_set<long long> seen_pairs;

    auto intern = [&](const std::string& id) {
        auto it = index_of.find(id);
        if (it != index_of.end()) return it->second;
        int idx = static_cast<int>(labels.size());
        index_of.emplace(id, idx);
        labels.push_back(id);
        return idx;
    };

    std::istringstream iss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(iss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string tag = "# classes:";
            if (t.rfind(tag, 0) == 0) {
                for (const std::string& pair : split_ws(t.substr(tag.size()))) {
                    std::size_t eq = pair.find('=');
                    if (eq == std::string::npos)
                        throw ParseError("line " + std::to_string(lineno) +
                                         ": class entry '" + pair + "' is not id=class");
                    std::string id = pair.substr(0, eq);
                    std::string cls = pair.substr(eq + 1);
                    if (!node_class_from_string(cls))
                        throw ParseError("line " + std::to_string(lineno) +
                                         ": unknown node class '" + cls + "'");
                    class_of[id] = cls;
                }
            }
            continue; // plain comment
        }
        std::vector<std::string> tok = split_ws(t);
        if (tok.size() != 2 && tok.size() != 3)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'source target [weight]'");
        int s = intern(tok[0]);
        int d = intern(tok[1]);
        double w = 1.0;
        if (tok.size() == 3) {
            auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), w);
            if (ec != std::errc{} || ptr != tok[2].data() + tok[2].size())
                throw ParseError("line " + std::to_string(lineno) + ": bad weight '" + tok[2] + "'");
        }
        long long key = static_cast<long long>(s) * (1LL << 32) + d;
        if (!seen_pairs.insert(key).second)
            throw ParseError("line " + std::to_string(lineno) + ": duplicate edge " +
                             tok[0] + " -> " + tok[1]);
        edges.push_back({s, d, w});
    }
    if (labels.empty()) throw ParseError("edge list is empty");

    DirectedNetwork net;
    const int n = static_cast<int>(labels.size());
    net.node_labels = std::move(labels);
    net.adjacency = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : edges) net.adjacency(e.dst, e.src) = e.w;
    net.kind = NetworkKind::directed;

    if (!class_of.empty()) {
        net.node_classes.resize(n);
        for (const auto& [id, cls] : class_of)
            if (!index_of.count(id))
                throw ParseError("class header names unknown node '" + id + "'");
        for (int i = 0; i < n; ++i) {
            auto it = class_of.find(net.node_labels[i]);
            if (it == class_of.end())
                throw ParseError("node '" + net.node_labels[i] + "' has no class tag");
            net.node_classes[i] = *node_class_from_string(it->second);
        }
    }
    return net;
}

DirectedNetwork bipartite_to_adjacency(const BipartiteNetwork& net) {
    const int na = net.n_pollinators();
    const int np = net.n_plants();
    DirectedNetwork out;
    out.adjacency = Eigen::MatrixXd::Zero(na + np, na + np);
    out.adjacency.block(0, na, na, np) = net.incidence;
    out.adjacency.block(na, 0, np, na) = net.incidence.transpose();
    out.node_labels = net.pollinator_labels;
    out.node_labels.insert(out.node_labels.end(), net.plant_labels.begin(), net.plant_labels.end());
    out.node_classes.assign(na + np, NodeClass::plant);
    std::fill(out.node_classes.begin(), out.node_classes.begin() + na, NodeClass::pollinator);
    out.kind = NetworkKind::undirected;
    return out;
}

std::vector<int> degrees(const DirectedNetwork& net) {
    const int n = net.size();
    std::vector<int> deg(n, 0);
    if (net.kind == NetworkKind::undirected) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (net.adjacency(i, j) != 0.0) ++deg[i];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (net.adjacency(i, j) != 0.0) {
                    ++deg[i]; // incoming at i
                    ++deg[j]; // outgoing at j
                }
    }
    return deg;
}

std::string serialize_incidence(const BipartiteNetwork& net) {
    std::ostringstream os;
    os << "species";
    for (const std::string& p : net.plant_labels) os << ',' << p;
    os << '\n';
    for (int i = 0; i < net.n_pollinators(); ++i) {
        os << net.pollinator_labels[i];
        for (int k = 0; k < net.n_plants(); ++k)
            os << ',' << (net.incidence(i, k) > 0.0 ? 1 : 0);
        os << '\n';
    }
    return os.str();
}

std::string serialize_edge_list(const DirectedNetwork& net) {
    std::ostringstream os;
    if (net.has_classes()) {
        os << "# classes:";
        for (int i = 0; i < net.size(); ++i)
            os << ' ' << net.node_labels[i] << '=' << to_string(net.node_classes[i]);
        os << '\n';
    }
    os.precision(17);
    for (int j = 0; j < net.size(); ++j)
        for (int i = 0; i < net.size(); ++i)
            if (net.adjacency(i, j) != 0.0) {
                os << net.node_labels[j] << ' ' << net.node_labels[i];
                if (net.adjacency(i, j) != 1.0) os << ' ' << net.adjacency(i, j);
                os << '\n';
            }
    return os.str();
}

namespace {

Subnetwork induced(const DirectedNetwork& net, const std::vector<int>& keep) {
    Subnetwork sub;
    const int m = static_cast<int>(keep.size());
    sub.original_indices = keep;
    sub.net.adjacency.resize(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            sub.net.adjacency(a, b) = net.adjacency(keep[a], keep[b]);
    for (int a = 0; a < m; ++a) {
        sub.net.node_labels.push_back(net.node_labels[keep[a]]);
        if (net.has_classes()) sub.net.node_classes.push_back(net.node_classes[keep[a]]);
    }
    sub.net.kind = net.kind;
    return sub;
}

// Iterative Tarjan strongly connected components.
std::vector<int> scc_ids(const Eigen::MatrixXd& A, int& n_comps) {
    const int n = static_cast<int>(A.rows());
    std::vector<std::vector<int>> out_edges(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A(i, j) != 0.0) out_edges[j].push_back(i);

    std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int timer = 0;
    n_comps = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        disc[root] = low[root] = timer++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < out_edges[f.v].size()) {
                int w = out_edges[f.v][f.child++];
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                if (low[f.v] == disc[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = n_comps;
                        if (w == f.v) break;
                    }
                    ++n_comps;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return comp;
}

} // namespace

Subnetwork giant_scc(const DirectedNetwork& net) {
    int n_comps = 0;
    std::vector<int> comp = scc_ids(net.adjacency, n_comps);
    std::vector<int> size(n_comps, 0);
    for (int c : comp) ++size[c];
    int best = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    std::vector<int> keep;
    for (int i = 0; i < net.size(); ++i)
        if (comp[i] == best) keep.push_back(i);
    return induced(net, keep);
}

Subnetwork input_connected_subnetwork(const DirectedNetwork& net) {
    const int n = net.size();
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            int indeg = 0;
            for (int j = 0; j < n; ++j)
                if (alive[j] && net.adjacency(i, j) != 0.0) ++indeg;
            if (indeg == 0) {
                alive[i] = false;
                changed = true;
            }
        }
    }
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (alive[i]) keep.push_back(i);
    return induced(net, keep);
}

} // namespace ctrlrank::netio
