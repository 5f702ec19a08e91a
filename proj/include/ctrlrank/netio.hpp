#ifndef CTRLRANK_NETIO_HPP
#define CTRLRANK_NETIO_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace ctrlrank::netio {

enum class NetworkKind { undirected, directed };

enum class NodeClass { sensory, inter, motor, muscle, gene, pollinator, plant };

const char* to_string(NodeClass c);
std::optional<NodeClass> node_class_from_string(const std::string& s);

/// Pollinator-plant incidence structure. Row i / column k of `incidence`
/// is 1 iff pollinator i and plant k share a mutualistic link.
struct BipartiteNetwork {
    Eigen::MatrixXd incidence; // n_pollinators x n_plants, entries in {0,1}
    std::vector<std::string> pollinator_labels;
    std::vector<std::string> plant_labels;

    int n_pollinators() const { return static_cast<int>(incidence.rows()); }
    int n_plants() const { return static_cast<int>(incidence.cols()); }
    int link_count() const { return static_cast<int>(incidence.sum()); }

    Eigen::VectorXd pollinator_degrees() const { return incidence.rowwise().sum(); }
    Eigen::VectorXd plant_degrees() const { return incidence.colwise().sum().transpose(); }
};

/// Square weighted adjacency. Entry (i, j) is the weight of the edge from
/// node j into node i: column = source, row = target, so the matrix acts
/// on state vectors as in dx/dt = A x.
struct DirectedNetwork {
    Eigen::MatrixXd adjacency;
    std::vector<std::string> node_labels;
    std::vector<NodeClass> node_classes; // empty, or one tag per node
    NetworkKind kind = NetworkKind::directed;

    int size() const { return static_cast<int>(adjacency.rows()); }
    bool has_classes() const { return !node_classes.empty(); }
};

/// Parse a CSV incidence matrix: first row holds plant labels (the corner
/// cell is ignored), first column holds pollinator labels, body cells are
/// numeric. Any positive cell becomes a link. Throws ParseError on a
/// non-rectangular body, a non-numeric cell, or an isolated species.
BipartiteNetwork parse_incidence(const std::string& text);

/// Parse a whitespace-separated edge list. Lines are
///   source target [weight]
/// with weight defaulting to 1. Node ids are mapped to dense indices in
/// first-appearance order. Duplicate (source, target) pairs are an error;
/// self-loops are allowed. Header lines of the form
///   # classes: id=class id=class ...
/// assign node classes; when any tag is present all nodes must be tagged.
/// Other lines starting with '#' are comments.
DirectedNetwork parse_edge_list(const std::string& text);

/// Symmetric block expansion [[0, E], [E^T, 0]] of the incidence matrix.
/// Pollinators occupy indices 0..n_pollinators-1.
DirectedNetwork bipartite_to_adjacency(const BipartiteNetwork& net);

/// Per-node degree: nonzero row count for undirected networks,
/// in-degree + out-degree for directed ones.
std::vector<int> degrees(const DirectedNetwork& net);

// Inverse writers for the two parsers; parse(serialize(x)) is the
// identity on (n, adjacency, labels).
std::string serialize_incidence(const BipartiteNetwork& net);
std::string serialize_edge_list(const DirectedNetwork& net);

/// Largest strongly connected component as an induced subnetwork,
/// together with the original indices of its nodes.
struct Subnetwork {
    DirectedNetwork net;
    std::vector<int> original_indices;
};
Subnetwork giant_scc(const DirectedNetwork& net);

/// Maximal induced subnetwork in which every node keeps at least one
/// incoming edge (zero in-degree nodes are pruned iteratively).
Subnetwork input_connected_subnetwork(const DirectedNetwork& net);

} // namespace ctrlrank::netio

#endif
