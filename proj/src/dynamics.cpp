#include "ctrlrank/dynamics.hpp"

#include <cmath>
#include <string>

#include "ctrlrank/errors.hpp"

namespace ctrlrank::dynamics {

MutualisticModel::MutualisticModel(const netio::BipartiteNetwork& net,
                                   const MutualisticParams& params)
    : params_(params), n_a_(net.n_pollinators()), n_p_(net.n_plants()) {
    // gamma_ik = eps_ik * gamma0 / k_i^t; the gamma0 factor is applied in
    // rhs so the bifurcation parameter can change without rebuilding.
    Eigen::VectorXd ka = net.pollinator_degrees();
    Eigen::VectorXd kp = net.plant_degrees();
    gamma_unit_a_ = net.incidence;
    gamma_unit_p_ = net.incidence.transpose();
    for (int i = 0; i < n_a_; ++i)
        gamma_unit_a_.row(i) /= std::pow(ka(i), params_.t);
    for (int k = 0; k < n_p_; ++k)
        gamma_unit_p_.row(k) /= std::pow(kp(k), params_.t);
    sum_a_.resize(n_a_);
    sum_p_.resize(n_p_);
}

void MutualisticModel::rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dx) const {
    if (x.size() != n_a_ + n_p_)
        throw Error("state length " + std::to_string(x.size()) + " != " +
                    std::to_string(n_a_ + n_p_) + " species");
    dx.resize(x.size());
    const auto a = x.head(n_a_);
    const auto p = x.tail(n_p_);
    sum_a_.noalias() = params_.gamma0 * (gamma_unit_a_ * p);
    sum_p_.noalias() = params_.gamma0 * (gamma_unit_p_ * a);

    const double db = params_.beta_intra - params_.beta_inter;
    const double tot_a = params_.beta_inter * a.sum();
    const double tot_p = params_.beta_inter * p.sum();
    for (int i = 0; i < n_a_; ++i) {
        const double comp = tot_a + db * a(i);
        const double mut = sum_a_(i) / (1.0 + params_.h * sum_a_(i));
        dx(i) = a(i) * (params_.alpha_A - comp + mut) + params_.mu_A;
    }
    for (int k = 0; k < n_p_; ++k) {
        const double comp = tot_p + db * p(k);
        const double mut = sum_p_(k) / (1.0 + params_.h * sum_p_(k));
        dx(n_a_ + k) = p(k) * (params_.alpha_P - comp + mut) + params_.mu_P;
    }
}

GeneModel::GeneModel(const netio::DirectedNetwork& net, const GeneParams& params)
    : params_(params), n_(net.size()) {
    links_ = (net.adjacency.array() != 0.0).cast<double>();
    act_.resize(n_);
}

void GeneModel::rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dx) const {
    if (x.size() != n_)
        throw Error("state length " + std::to_string(x.size()) + " != " +
                    std::to_string(n_) + " genes");
    for (int j = 0; j < n_; ++j) {
        const double xh = std::pow(x(j), params_.h_hill);
        act_(j) = xh / (1.0 + xh);
    }
    dx.resize(n_);
    dx.noalias() = params_.C * (links_ * act_);
    for (int i = 0; i < n_; ++i)
        dx(i) -= params_.B * std::pow(x(i), params_.f);
}

Eigen::VectorXd mutualistic_derivative(const Eigen::VectorXd& state,
                                       const MutualisticParams& params,
                                       const netio::BipartiteNetwork& net) {
    MutualisticModel model(net, params);
    Eigen::VectorXd dx;
    model.rhs(state, dx);
    return dx;
}

Eigen::VectorXd gene_derivative(const Eigen::VectorXd& state,
                                const GeneParams& params,
                                const netio::DirectedNetwork& net) {
    GeneModel model(net, params);
    Eigen::VectorXd dx;
    model.rhs(state, dx);
    return dx;
}

IntegrateResult integrate_steady(const Model& model, const Eigen::VectorXd& x0,
                                 const IntegrateOptions& opt,
                                 std::optional<PinSpec> pin) {
    const int n = model.size();
    if (x0.size() != n)
        throw Error("initial state length " + std::to_string(x0.size()) +
                    " != " + std::to_string(n));
    if (pin && (pin->node < 0 || pin->node >= n))
        throw Error("pinned node " + std::to_string(pin->node) + " out of range");

    Eigen::VectorXd x = x0;
    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
    if (pin) x(pin->node) = pin->value;

    auto eval = [&](const Eigen::VectorXd& s, Eigen::VectorXd& k) {
        model.rhs(s, k);
        if (pin) k(pin->node) = 0.0;
    };

    const long steps = static_cast<long>(opt.t_max / opt.dt);
    const double h = opt.dt;
    for (long step = 0; step < steps; ++step) {
        eval(x, k1);
        if (k1.cwiseAbs().maxCoeff() < opt.eps) return {x, true};
        tmp = x + 0.5 * h * k1;
        eval(tmp, k2);
        tmp = x + 0.5 * h * k2;
        eval(tmp, k3);
        tmp = x + h * k3;
        eval(tmp, k4);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = x.cwiseMax(0.0);
        if (pin) x(pin->node) = pin->value;
        if (!x.allFinite())
            throw DivergenceError("state diverged at t = " +
                                  std::to_string((step + 1) * h));
    }
    eval(x, k1);
    return {x, k1.cwiseAbs().maxCoeff() < opt.eps};
}

} // namespace ctrlrank::dynamics
