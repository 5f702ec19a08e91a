#ifndef CTRLRANK_DYNAMICS_HPP
#define CTRLRANK_DYNAMICS_HPP

#include <Eigen/Dense>
#include <optional>

#include "ctrlrank/netio.hpp"

namespace ctrlrank::dynamics {

/// Parameters of the mutualistic pollinator-plant model. gamma0 is the
/// bifurcation parameter; everything else defaults to the standard setting.
struct MutualisticParams {
    double h = 0.2;          // handling / half-saturation constant
    double t = 0.5;          // mutualistic trade-off exponent
    double beta_intra = 1.0; // intra-species competition (beta_ii)
    double beta_inter = 0.0; // inter-species competition (beta_ij, i != j)
    double alpha_A = -0.3;   // pollinator intrinsic growth rate
    double alpha_P = -0.3;   // plant intrinsic growth rate
    double mu_A = 1e-4;      // pollinator immigration rate
    double mu_P = 1e-4;      // plant immigration rate
    double gamma0 = 1.0;     // average mutualistic strength
};

/// Parameters of the gene-regulatory model. C is the bifurcation parameter.
struct GeneParams {
    double B = 1.0;      // degradation rate
    double f = 1.0;      // degradation exponent
    double h_hill = 2.0; // Hill coefficient of the activation term
    double C = 1.0;      // regulation strength
};

/// Hold one node at a fixed value: the node's state is overwritten after
/// every integrator step and its derivative treated as zero.
struct PinSpec {
    int node = 0;
    double value = 0.0;
};

struct IntegrateOptions {
    double dt = 0.01;
    double eps = 1e-10;   // convergence test: max|dx/dt| < eps
    double t_max = 5000.0;
};

struct IntegrateResult {
    Eigen::VectorXd state;
    bool converged = false;
};

/// Common interface for the two model families, so sweeps and recovery
/// scans can be written once. Implementations are cheap to copy and do
/// not own the network they were built from.
class Model {
public:
    virtual ~Model() = default;
    virtual int size() const = 0;
    /// Evaluate dx/dt into `dx` (same length as `x`).
    virtual void rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dx) const = 0;
    /// The bifurcation parameter (gamma0 or C).
    virtual double bifurcation() const = 0;
    virtual void set_bifurcation(double value) = 0;
    /// Whether node `i` may be pinned by external control.
    virtual bool controllable(int i) const = 0;
};

/// dA_i/dt = A_i(alpha_A - sum_j beta_ij A_j
///               + sum_k gamma_ik P_k / (1 + h sum_k gamma_ik P_k)) + mu_A
/// and symmetrically for plants, with gamma_ik = eps_ik * gamma0 / k_i^t
/// where k_i is the degree of the focal node. State layout: pollinators
/// first (indices 0..N_A-1), then plants. Only pollinators are controllable.
class MutualisticModel : public Model {
public:
    MutualisticModel(const netio::BipartiteNetwork& net, const MutualisticParams& params);

    int size() const override { return n_a_ + n_p_; }
    int n_pollinators() const { return n_a_; }
    int n_plants() const { return n_p_; }
    void rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dx) const override;
    double bifurcation() const override { return params_.gamma0; }
    void set_bifurcation(double value) override { params_.gamma0 = value; }
    bool controllable(int i) const override { return i >= 0 && i < n_a_; }
    const MutualisticParams& params() const { return params_; }

private:
    MutualisticParams params_;
    int n_a_ = 0, n_p_ = 0;
    Eigen::MatrixXd gamma_unit_a_; // eps_ik / k_i^t, pollinator rows
    Eigen::MatrixXd gamma_unit_p_; // eps_ki / k_k^t, plant rows
    mutable Eigen::VectorXd sum_a_, sum_p_; // scratch for rhs
};

/// dx_i/dt = -B x_i^f + C sum_{j in in(i)} x_j^h / (1 + x_j^h).
/// Any gene is controllable.
class GeneModel : public Model {
public:
    GeneModel(const netio::DirectedNetwork& net, const GeneParams& params);

    int size() const override { return n_; }
    void rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dx) const override;
    double bifurcation() const override { return params_.C; }
    void set_bifurcation(double value) override { params_.C = value; }
    bool controllable(int i) const override { return i >= 0 && i < n_; }
    const GeneParams& params() const { return params_; }

private:
    GeneParams params_;
    int n_ = 0;
    Eigen::MatrixXd links_; // binarized adjacency, row = target
    mutable Eigen::VectorXd act_; // scratch for rhs
};

/// One-shot derivative evaluations (convenience wrappers over the models).
Eigen::VectorXd mutualistic_derivative(const Eigen::VectorXd& state,
                                       const MutualisticParams& params,
                                       const netio::BipartiteNetwork& net);
Eigen::VectorXd gene_derivative(const Eigen::VectorXd& state,
                                const GeneParams& params,
                                const netio::DirectedNetwork& net);

/// Classical RK4 until max|dx/dt| < opt.eps or t_max is reached. Negative
/// entries are clipped to zero after each step; a pinned node is reset to
/// its held value after each step and its derivative forced to zero.
/// Throws DivergenceError when the state leaves the finite range.
IntegrateResult integrate_steady(const Model& model, const Eigen::VectorXd& x0,
                                 const IntegrateOptions& opt,
                                 std::optional<PinSpec> pin = std::nullopt);

} // namespace ctrlrank::dynamics

#endif
