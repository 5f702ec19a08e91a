#ifndef CTRLRANK_LINCTRL_HPP
#define CTRLRANK_LINCTRL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ctrlrank/netio.hpp"
#include "ctrlrank/ranking.hpp"

namespace ctrlrank::linctrl {

struct Tolerances {
    double cluster_tol_rel = 1e-8; // eigenvalue clustering, relative to max(1, sigma_max)
    double rank_tol = 1e-10;       // numerical rank, relative to largest singular value
};

/// One clustered eigenvalue with its multiplicities.
struct EigenCluster {
    std::complex<double> value;
    int algebraic = 0; // delta: cluster size
    int geometric = 0; // mu: n - rank(lambda I - A)
};

struct SpectrumReport {
    std::vector<EigenCluster> clusters;
    double sigma_max = 0.0;   // largest singular value of A
    double cluster_tol = 0.0; // absolute clustering tolerance actually used
    double rank_tol = 0.0;    // relative rank tolerance, as configured
};

/// One minimum driver-node set with the eigenvalue it was anchored on.
struct ControllerSet {
    std::vector<int> drivers; // sorted, size N_D
    std::complex<double> lambda_M;
};

/// Eigenvalues of A clustered within cluster_tol; geometric multiplicity
/// from the numerical rank of (lambda I - A). For symmetric input the
/// real symmetric solver is used and mu = delta by construction.
SpectrumReport spectrum_multiplicities(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                       const Tolerances& tol = {});

/// N_D: max geometric multiplicity for directed networks, max algebraic
/// multiplicity for undirected ones. Always >= 1.
int min_driver_count(const SpectrumReport& report, netio::NetworkKind kind);
int min_driver_count(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                     const Tolerances& tol = {});

/// Greedy scan of the rows of (lambda I - A) in `row_order`: a row joins
/// the basis iff it increases the numerical rank. Returns (basis rows,
/// driver rows); the driver rows are the complement of a row basis, of
/// size mu(lambda) for every order.
std::pair<std::vector<int>, std::vector<int>>
dependent_row_basis(const Eigen::MatrixXd& A, std::complex<double> lambda,
                    const std::vector<int>& row_order, double rank_tol = 1e-10);

/// Shared spectral state for repeated sampling/verification on one matrix:
/// the clustered spectrum, the anchoring eigenvalue lambda_M, and (for
/// undirected input) a left null-space basis per cluster, used to verify
/// the PBH rank condition without forming (lambda I - A, B) each time.
class ControllabilityContext {
public:
    ControllabilityContext(Eigen::MatrixXd A, netio::NetworkKind kind,
                           const Tolerances& tol = {});

    const Eigen::MatrixXd& matrix() const { return A_; }
    netio::NetworkKind kind() const { return kind_; }
    const SpectrumReport& spectrum() const { return spectrum_; }
    int min_drivers() const { return n_d_; }
    /// Anchor eigenvalue: largest multiplicity, ties broken by larger
    /// |lambda|, then larger real part, then larger imaginary part.
    std::complex<double> lambda_M() const { return lambda_m_; }

    /// True iff rank(lambda I - A, B) = n for every eigenvalue, with B
    /// the unit columns of `drivers`. Undirected input is tested per
    /// cluster against the left null-space bases; directed input through
    /// the dimension of the controllable subspace (orthogonal staircase
    /// deflation), which is equivalent and stays reliable when A is
    /// defective and computed eigenvalues scatter.
    bool verify(const std::vector<int>& drivers) const;

    /// One random minimum controller set: a uniformly random row order is
    /// fed to dependent_row_basis at lambda_M and the complement taken as
    /// the driver set; re-drawn (up to 32 times) if verification fails at
    /// another degenerate eigenvalue. Throws SamplingError after that.
    ControllerSet sample(std::uint64_t seed) const;

    /// F independent samples; sample k uses the sub-seed
    /// split_seed(seed, k), so any execution order gives the same sets.
    std::vector<ControllerSet> sample_many(int F, std::uint64_t seed) const;

    /// Membership frequencies over the same F samples. Scope is every
    /// node; sum of values = N_D.
    ImportanceRanking importance(int F, std::uint64_t seed) const;

    /// All distinct driver sets arising as complements of row bases of
    /// (lambda_M I - A) that verify controllable. Throws Error when more
    /// than `cap` sets exist (or the subset search space is infeasible).
    std::vector<ControllerSet> enumerate(std::size_t cap) const;

private:
    Eigen::MatrixXd A_;
    netio::NetworkKind kind_;
    Tolerances tol_;
    SpectrumReport spectrum_;
    int n_d_ = 1;
    std::complex<double> lambda_m_;
    // Orthonormal left null-space basis (n x mu) per cluster, aligned
    // with spectrum_.clusters.
    std::vector<Eigen::MatrixXcd> left_null_;
    // Cached greedy-scan state at lambda_M.
    bool greedy_real_ = true;
    Eigen::MatrixXd anchor_real_;  // lambda_M I - A when lambda_M is real
    Eigen::MatrixXcd anchor_cplx_; // ... when it is not
    double anchor_tol_abs_ = 0.0;  // absolute residual threshold
    int anchor_rank_ = 0;          // rank of (lambda_M I - A)
};

// Free-function forms of the sampling/verification operations; each
// builds a context internally.
ControllerSet sample_controller_set(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                    std::uint64_t seed, const Tolerances& tol = {});
bool verify_controllable(const Eigen::MatrixXd& A, const ControllerSet& set,
                         netio::NetworkKind kind, const Tolerances& tol = {});
ImportanceRanking linear_importance(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                    int F, std::uint64_t seed, const Tolerances& tol = {});
std::vector<ControllerSet> enumerate_controller_sets(const Eigen::MatrixXd& A,
                                                     netio::NetworkKind kind,
                                                     std::size_t cap,
                                                     const Tolerances& tol = {});

/// Numerical rank of the controllability matrix (B, AB, ..., A^{n-1}B).
/// Small-instance use only: the matrix is ill-conditioned at scale.
int kalman_rank(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                double rank_tol = 1e-10);

/// Unit-column input matrix for a driver set.
Eigen::MatrixXd input_matrix(int n, const std::vector<int>& drivers);

} // namespace ctrlrank::linctrl

#endif
