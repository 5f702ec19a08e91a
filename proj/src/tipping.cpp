#include "ctrlrank/tipping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctrlrank/errors.hpp"

namespace ctrlrank::tipping {

SweepResult sweep(dynamics::Model& model, const std::vector<double>& grid,
                  SweepDirection direction, const Eigen::VectorXd& x0,
                  const dynamics::IntegrateOptions& opt, double threshold,
                  std::optional<dynamics::PinSpec> pin) {
    if (grid.empty()) throw Error("sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ok = direction == SweepDirection::descending
                            ? grid[i] < grid[i - 1]
                            : grid[i] > grid[i - 1];
        if (!ok) throw Error("sweep grid is not strictly monotone");
    }

    SweepResult result;
    result.grid = grid;
    result.direction = direction;
    result.states.reserve(grid.size());
    Eigen::VectorXd x = x0;
    for (double value : grid) {
        model.set_bifurcation(value);
        x = integrate_steady(model, x, opt, pin).state;
        result.states.push_back(x);
    }
    if (direction == SweepDirection::descending)
        result.tipping_point = detect_tipping(result, threshold);
    return result;
}

std::optional<double> detect_tipping(const SweepResult& result, double threshold) {
    if (result.direction != SweepDirection::descending)
        throw Error("tipping detection needs a descending sweep");
    for (std::size_t i = 0; i < result.grid.size(); ++i)
        if (result.states[i].maxCoeff() < threshold) return result.grid[i];
    return std::nullopt;
}

std::optional<double> recovery_point(dynamics::Model& model,
                                     const Eigen::VectorXd& extinct_state,
                                     int node, double held_value,
                                     const std::vector<double>& grid_ascending,
                                     double threshold,
                                     const dynamics::IntegrateOptions& opt) {
    if (!model.controllable(node))
        throw ScopeError("node " + std::to_string(node) +
                         " is not subject to control in this model");
    dynamics::PinSpec pin{node, held_value};
    Eigen::VectorXd x = extinct_state;
    for (double value : grid_ascending) {
        model.set_bifurcation(value);
        x = integrate_steady(model, x, opt, pin).state;
        bool recovered = true;
        for (int i = 0; i < model.size() && recovered; ++i)
            if (i != node && x(i) < threshold) recovered = false;
        if (recovered) return value;
    }
    return std::nullopt;
}

ImportanceRanking rank_nonlinear(const RecoveryTable& table) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    int finite = 0;
    for (const auto& p : table.points) {
        if (!p) continue;
        lo = std::min(lo, *p);
        hi = std::max(hi, *p);
        ++finite;
    }
    if (finite == 0)
        throw DegenerateRankingError("no node leads to recovery; nothing to rank");
    if (finite < 2)
        throw DegenerateRankingError("only one node recovers; ranking needs two");
    if (hi == lo)
        throw DegenerateRankingError("all recovery points equal " +
                                     std::to_string(hi) + "; ranking is degenerate");

    ImportanceRanking ranking;
    ranking.kind = RankKind::nonlinear;
    ranking.node_indices = table.node_indices;
    ranking.scope = table.scope;
    ranking.values.reserve(table.points.size());
    for (const auto& p : table.points)
        ranking.values.push_back(p ? (hi - *p) / (hi - lo) : 0.0);
    return ranking;
}

NonlinearAnalysis analyze_nonlinear(dynamics::Model& model,
                                    const std::vector<double>& grid_ascending,
                                    double threshold, double held_value,
                                    const dynamics::IntegrateOptions& opt,
                                    double x0_value) {
    NonlinearAnalysis out;
    std::vector<double> grid_desc(grid_ascending.rbegin(), grid_ascending.rend());
    Eigen::VectorXd x0 = Eigen::VectorXd::Constant(model.size(), x0_value);
    out.descending = sweep(model, grid_desc, SweepDirection::descending, x0, opt,
                           threshold);
    out.extinction_state = out.descending.states.back();

    out.recovery.scope = "all";
    for (int i = 0; i < model.size(); ++i) {
        if (!model.controllable(i)) {
            out.recovery.scope = "pollinators";
            continue;
        }
        out.recovery.node_indices.push_back(i);
        out.recovery.points.push_back(recovery_point(model, out.extinction_state, i,
                                                     held_value, grid_ascending,
                                                     threshold, opt));
    }
    out.ranking = rank_nonlinear(out.recovery);
    return out;
}

} // namespace ctrlrank::tipping
