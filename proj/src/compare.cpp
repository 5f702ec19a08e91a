#include "ctrlrank/compare.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "ctrlrank/errors.hpp"
#include "ctrlrank/rng.hpp"

namespace ctrlrank::compare {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw Error("pearson: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error("pearson: undefined for a constant sequence");
    return sxy / std::sqrt(sxx * syy);
}

double cosine_distance(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("cosine_distance: length mismatch");
    double dot = 0, nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    if (nx == 0.0 || ny == 0.0)
        throw Error("cosine_distance: undefined for a zero vector");
    return 1.0 - dot / std::sqrt(nx * ny);
}

Report build_report(const ImportanceRanking& nl, const ImportanceRanking& lin,
                    const std::vector<int>& degrees,
                    const std::vector<std::string>& labels,
                    std::uint64_t seed, const std::string& network_id, int F,
                    const std::string& fingerprint) {
    if (degrees.size() != labels.size())
        throw Error("degree and label lists disagree");

    std::unordered_map<int, double> nl_of, lin_of;
    for (int k = 0; k < nl.size(); ++k) nl_of[nl.node_indices[k]] = nl.values[k];
    for (int k = 0; k < lin.size(); ++k) lin_of[lin.node_indices[k]] = lin.values[k];

    std::vector<double> xs, ys;
    for (int k = 0; k < nl.size(); ++k) {
        auto it = lin_of.find(nl.node_indices[k]);
        if (it == lin_of.end())
            throw ScopeError("linear ranking misses node " +
                             std::to_string(nl.node_indices[k]) +
                             " of scope '" + nl.scope + "'");
        xs.push_back(nl.values[k]);
        ys.push_back(it->second);
    }

    Report report;
    report.record.network_id = network_id;
    report.record.pearson_r = pearson(xs, ys);
    report.record.cosine_d = cosine_distance(xs, ys);
    report.record.scope = nl.scope;
    report.record.n_scope = static_cast<int>(xs.size());
    report.record.F = F;
    report.record.fingerprint = fingerprint;

    // One row per node of the union of both scopes, degree descending.
    // Ties are put in a seeded random order, so equal-degree nodes are
    // not implicitly ranked by their index.
    std::vector<int> nodes;
    for (int k = 0; k < lin.size(); ++k) nodes.push_back(lin.node_indices[k]);
    for (int k = 0; k < nl.size(); ++k)
        if (!lin_of.count(nl.node_indices[k])) nodes.push_back(nl.node_indices[k]);
    for (int node : nodes)
        if (node < 0 || node >= static_cast<int>(labels.size()))
            throw Error("ranked node " + std::to_string(node) + " has no label");

    std::mt19937_64 rng(seed);
    shuffle_vec(nodes, rng);
    std::stable_sort(nodes.begin(), nodes.end(),
                     [&](int a, int b) { return degrees[a] > degrees[b]; });

    for (int node : nodes) {
        ReportRow row;
        row.node = node;
        row.label = labels[node];
        row.degree = degrees[node];
        row.in_scope = nl_of.count(node) > 0;
        row.r_nl = row.in_scope ? nl_of[node] : 0.0;
        row.r_l = lin_of.count(node) ? lin_of[node] : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace ctrlrank::compare
