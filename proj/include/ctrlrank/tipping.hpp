#ifndef CTRLRANK_TIPPING_HPP
#define CTRLRANK_TIPPING_HPP

#include <optional>
#include <vector>

#include "ctrlrank/dynamics.hpp"
#include "ctrlrank/ranking.hpp"

namespace ctrlrank::tipping {

enum class SweepDirection { descending, ascending };

/// Steady states along a quasi-static parameter sweep: each grid point is
/// integrated starting from the previous point's steady state.
struct SweepResult {
    std::vector<double> grid; // strictly monotone in `direction`
    std::vector<Eigen::VectorXd> states;
    SweepDirection direction = SweepDirection::descending;
    std::optional<double> tipping_point;
};

/// Recovery point per controlled node; nullopt marks no recovery within
/// the grid.
struct RecoveryTable {
    std::vector<int> node_indices;
    std::vector<std::optional<double>> points;
    std::string scope = "all";
};

/// Run a quasi-static sweep over `grid` (must be monotone in `direction`),
/// starting the first grid point from `x0`. When descending, the tipping
/// point is filled in via detect_tipping with `threshold`. An optional pin
/// is applied at every grid point.
SweepResult sweep(dynamics::Model& model, const std::vector<double>& grid,
                  SweepDirection direction, const Eigen::VectorXd& x0,
                  const dynamics::IntegrateOptions& opt, double threshold,
                  std::optional<dynamics::PinSpec> pin = std::nullopt);

/// First grid value of a descending sweep at which every species sits
/// below `threshold`; nullopt if that never happens.
std::optional<double> detect_tipping(const SweepResult& result, double threshold);

/// Pin `node` at `held_value` and sweep the bifurcation parameter up
/// `grid_ascending` starting from `extinct_state`. Returns the smallest
/// grid value at which all unpinned species reach `threshold`, or nullopt
/// if the grid is exhausted. Throws ScopeError when `node` is not
/// controllable in this model.
std::optional<double> recovery_point(dynamics::Model& model,
                                     const Eigen::VectorXd& extinct_state,
                                     int node, double held_value,
                                     const std::vector<double>& grid_ascending,
                                     double threshold,
                                     const dynamics::IntegrateOptions& opt);

/// R^i = (r_max - r_i) / (r_max - r_min) over the finite recovery points;
/// no-recovery nodes get R = 0. Throws DegenerateRankingError when no
/// node recovers or all finite recovery points coincide.
ImportanceRanking rank_nonlinear(const RecoveryTable& table);

/// Full nonlinear pipeline: descending sweep from the high-abundance state,
/// extinction state at the grid minimum, per-node recovery scan with the
/// pin at `held_value`, and the resulting ranking.
struct NonlinearAnalysis {
    SweepResult descending;
    Eigen::VectorXd extinction_state;
    RecoveryTable recovery;
    ImportanceRanking ranking;
};

NonlinearAnalysis analyze_nonlinear(dynamics::Model& model,
                                    const std::vector<double>& grid_ascending,
                                    double threshold, double held_value,
                                    const dynamics::IntegrateOptions& opt,
                                    double x0_value = 2.0);

} // namespace ctrlrank::tipping

#endif
