#include "ctrlrank/linctrl.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ctrlrank/errors.hpp"
#include "ctrlrank/rng.hpp"

namespace ctrlrank::linctrl {

namespace {

using Complex = std::complex<double>;

void check_square_finite(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw Error("adjacency matrix is not square");
    if (!A.allFinite()) throw Error("adjacency matrix has non-finite entries");
}

bool is_symmetric(const Eigen::MatrixXd& A) {
    return (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
}

double largest_singular_value(const Eigen::MatrixXd& A) {
    if (A.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
}

// Single-linkage clustering of eigenvalues: any two values within
// `tol` of each other end up in the same cluster.
std::vector<std::vector<int>> cluster_values(const Eigen::VectorXcd& vals, double tol) {
    const int n = static_cast<int>(vals.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(vals(i) - vals(j)) <= tol) parent[find(i)] = find(j);

    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& g : groups)
        if (!g.empty()) out.push_back(std::move(g));
    return out;
}

int svd_rank(const Eigen::VectorXd& singular_values, double tol_abs) {
    int r = 0;
    for (int i = 0; i < singular_values.size(); ++i)
        if (singular_values(i) > tol_abs) ++r;
    return r;
}

// Greedy complement-of-basis scan shared by the real and complex paths.
// Rows are visited in `order`; a row joins the basis iff its residual
// after (twice-reorthogonalized) projection exceeds tol_abs and the basis
// is not yet full. With target_rank < 0 the threshold alone decides.
template <typename Mat>
std::pair<std::vector<int>, std::vector<int>>
greedy_row_scan(const Mat& M, const std::vector<int>& order, int target_rank,
                double tol_abs) {
    using Vec = Eigen::Matrix<typename Mat::Scalar, Eigen::Dynamic, 1>;
    const int n = static_cast<int>(M.rows());
    Mat Q(M.cols(), n); // orthonormal basis vectors as columns
    int k = 0;
    std::vector<int> basis, drivers;
    Vec v, coeff;
    for (int r : order) {
        if (target_rank >= 0 && k == target_rank) {
            drivers.push_back(r);
            continue;
        }
        v = M.row(r).adjoint();
        for (int pass = 0; pass < 2 && k > 0; ++pass) {
            coeff.noalias() = Q.leftCols(k).adjoint() * v;
            v.noalias() -= Q.leftCols(k) * coeff;
        }
        const double res = v.norm();
        if (res > tol_abs) {
            Q.col(k++) = v / res;
            basis.push_back(r);
        } else {
            drivers.push_back(r);
        }
    }
    if (target_rank >= 0 && k != target_rank)
        throw Error("row scan reached rank " + std::to_string(k) + ", expected " +
                    std::to_string(target_rank));
    return {std::move(basis), std::move(drivers)};
}

std::string complex_to_string(Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

// Dimension of the controllable subspace <A|B> by staircase deflation:
// split off im(B), restrict to the orthogonal complement, repeat. Uses
// only orthogonal transforms and rank decisions at tol_abs, so it is
// reliable where eigenvalue-based tests are not (defective A: computed
// eigenvalues of a Jordan block of size k are off by O(eps^{1/k}), far
// enough to make every per-eigenvalue rank test pass spuriously).
int controllable_dim(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     double tol_abs) {
    Eigen::MatrixXd Acur = A;
    Eigen::MatrixXd Bcur = B;
    const int n = static_cast<int>(A.rows());
    int dim = 0;
    int size = n;
    while (size > 0 && Bcur.cols() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Bcur, Eigen::ComputeFullU);
        const int r = svd_rank(svd.singularValues(), tol_abs);
        if (r == 0) break;
        dim += r;
        const int rest = size - r;
        if (rest == 0) break;
        Eigen::MatrixXd T = svd.matrixU().transpose() * Acur * svd.matrixU();
        Bcur = T.bottomLeftCorner(rest, r);
        Acur = T.bottomRightCorner(rest, rest);
        size = rest;
    }
    return dim;
}

} // namespace

SpectrumReport spectrum_multiplicities(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                       const Tolerances& tol) {
    check_square_finite(A);
    const int n = static_cast<int>(A.rows());
    if (kind == netio::NetworkKind::undirected && !is_symmetric(A))
        throw Error("undirected network with asymmetric adjacency");

    SpectrumReport report;
    report.sigma_max = largest_singular_value(A);
    report.cluster_tol = tol.cluster_tol_rel * std::max(1.0, report.sigma_max);
    report.rank_tol = tol.rank_tol;
    if (n == 0) return report;

    Eigen::VectorXcd vals(n);
    if (kind == netio::NetworkKind::undirected) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
        vals = es.eigenvalues().cast<Complex>();
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
        if (es.info() != Eigen::Success) throw Error("eigensolver failed");
        vals = es.eigenvalues();
    }

    for (const auto& members : cluster_values(vals, report.cluster_tol)) {
        EigenCluster c;
        Complex sum = 0.0;
        for (int idx : members) sum += vals(idx);
        c.value = sum / static_cast<double>(members.size());
        c.algebraic = static_cast<int>(members.size());
        if (kind == netio::NetworkKind::undirected || c.algebraic == 1) {
            // Symmetric matrices are diagonalizable; a simple eigenvalue
            // has a one-dimensional eigenspace.
            c.geometric = kind == netio::NetworkKind::undirected ? c.algebraic : 1;
        } else {
            Eigen::MatrixXcd M = -A.cast<Complex>();
            M.diagonal().array() += c.value;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
            const double tol_abs = tol.rank_tol * std::max(svd.singularValues()(0), 0.0);
            c.geometric = n - svd_rank(svd.singularValues(), tol_abs);
            c.geometric = std::clamp(c.geometric, 1, c.algebraic);
        }
        report.clusters.push_back(c);
    }
    std::sort(report.clusters.begin(), report.clusters.end(),
              [](const EigenCluster& a, const EigenCluster& b) {
                  if (a.value.real() != b.value.real())
                      return a.value.real() < b.value.real();
                  return a.value.imag() < b.value.imag();
              });
    return report;
}

int min_driver_count(const SpectrumReport& report, netio::NetworkKind kind) {
    int best = 1;
    for (const auto& c : report.clusters)
        best = std::max(best, kind == netio::NetworkKind::undirected ? c.algebraic
                                                                     : c.geometric);
    return best;
}

int min_driver_count(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                     const Tolerances& tol) {
    return min_driver_count(spectrum_multiplicities(A, kind, tol), kind);
}

std::pair<std::vector<int>, std::vector<int>>
dependent_row_basis(const Eigen::MatrixXd& A, std::complex<double> lambda,
                    const std::vector<int>& row_order, double rank_tol) {
    check_square_finite(A);
    const int n = static_cast<int>(A.rows());
    if (static_cast<int>(row_order.size()) != n)
        throw Error("row order must be a permutation of all rows");

    if (lambda.imag() == 0.0) {
        Eigen::MatrixXd M = -A;
        M.diagonal().array() += lambda.real();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        const double smax = n > 0 ? svd.singularValues()(0) : 0.0;
        const double tol_abs = rank_tol * smax;
        const int target = svd_rank(svd.singularValues(), tol_abs);
        return greedy_row_scan(M, row_order, target, tol_abs);
    }
    Eigen::MatrixXcd M = -A.cast<Complex>();
    M.diagonal().array() += lambda;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const double smax = n > 0 ? svd.singularValues()(0) : 0.0;
    const double tol_abs = rank_tol * smax;
    const int target = svd_rank(svd.singularValues(), tol_abs);
    return greedy_row_scan(M, row_order, target, tol_abs);
}

ControllabilityContext::ControllabilityContext(Eigen::MatrixXd A, netio::NetworkKind kind,
                                               const Tolerances& tol)
    : A_(std::move(A)), kind_(kind), tol_(tol) {
    spectrum_ = spectrum_multiplicities(A_, kind_, tol_);
    n_d_ = min_driver_count(spectrum_, kind_);
    const int n = static_cast<int>(A_.rows());
    if (n == 0) throw Error("empty network");

    // Anchor eigenvalue: the cluster attaining the maximum multiplicity,
    // ties broken by |lambda|, then real part, then imaginary part.
    auto weight = [&](const EigenCluster& c) {
        return kind_ == netio::NetworkKind::undirected ? c.algebraic : c.geometric;
    };
    const EigenCluster* anchor = &spectrum_.clusters.front();
    for (const auto& c : spectrum_.clusters) {
        if (weight(c) != weight(*anchor)) {
            if (weight(c) > weight(*anchor)) anchor = &c;
            continue;
        }
        const double da = std::abs(c.value), db = std::abs(anchor->value);
        if (da != db) {
            if (da > db) anchor = &c;
            continue;
        }
        if (c.value.real() != anchor->value.real()) {
            if (c.value.real() > anchor->value.real()) anchor = &c;
            continue;
        }
        if (c.value.imag() > anchor->value.imag()) anchor = &c;
    }
    lambda_m_ = anchor->value;

    // Left null-space basis per cluster, undirected only: the symmetric
    // eigenproblem is perfectly conditioned, so the per-cluster PBH rank
    // test is exact and cheap to apply per candidate set. Directed
    // verification goes through controllable_dim instead (see verify),
    // which stays sound on defective matrices.
    if (kind_ == netio::NetworkKind::undirected) {
        left_null_.resize(spectrum_.clusters.size());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A_);
        if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
        // each eigenvector goes to the nearest cluster representative
        std::vector<int> filled(spectrum_.clusters.size(), 0);
        for (std::size_t c = 0; c < spectrum_.clusters.size(); ++c)
            left_null_[c].resize(n, spectrum_.clusters[c].algebraic);
        for (int i = 0; i < n; ++i) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < spectrum_.clusters.size(); ++c)
                if (std::abs(es.eigenvalues()(i) - spectrum_.clusters[c].value.real()) <
                    std::abs(es.eigenvalues()(i) - spectrum_.clusters[best].value.real()))
                    best = c;
            if (filled[best] == spectrum_.clusters[best].algebraic)
                throw Error("eigenvector count mismatch in cluster");
            left_null_[best].col(filled[best]++) = es.eigenvectors().col(i).cast<Complex>();
        }
    }

    // Greedy-scan state at the anchor eigenvalue: target rank and the
    // absolute residual threshold.
    if (kind_ == netio::NetworkKind::undirected) {
        greedy_real_ = true;
        anchor_real_ = -A_;
        anchor_real_.diagonal().array() += lambda_m_.real();
        double smax = 0.0;
        for (const auto& c : spectrum_.clusters)
            smax = std::max(smax, std::abs(c.value.real() - lambda_m_.real()));
        anchor_tol_abs_ = tol_.rank_tol * smax;
        anchor_rank_ = n - static_cast<int>(left_null_[anchor - &spectrum_.clusters[0]].cols());
    } else {
        greedy_real_ = lambda_m_.imag() == 0.0;
        if (greedy_real_) {
            anchor_real_ = -A_;
            anchor_real_.diagonal().array() += lambda_m_.real();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(anchor_real_);
            anchor_tol_abs_ = tol_.rank_tol * svd.singularValues()(0);
            anchor_rank_ = svd_rank(svd.singularValues(), anchor_tol_abs_);
        } else {
            anchor_cplx_ = -A_.cast<Complex>();
            anchor_cplx_.diagonal().array() += lambda_m_;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(anchor_cplx_);
            anchor_tol_abs_ = tol_.rank_tol * svd.singularValues()(0);
            anchor_rank_ = svd_rank(svd.singularValues(), anchor_tol_abs_);
        }
    }
}

bool ControllabilityContext::verify(const std::vector<int>& drivers) const {
    if (drivers.empty()) return false;
    const int n = static_cast<int>(A_.rows());
    for (int d : drivers)
        if (d < 0 || d >= n) throw Error("driver index out of range");
    if (kind_ == netio::NetworkKind::directed) {
        const double tol_abs = tol_.rank_tol * std::max(1.0, spectrum_.sigma_max);
        return controllable_dim(A_, input_matrix(n, drivers), tol_abs) == n;
    }
    const int m = static_cast<int>(drivers.size());
    for (const auto& W : left_null_) {
        const int mu = static_cast<int>(W.cols());
        if (mu == 0) continue;
        if (mu > m) return false; // cannot reach full rank
        Eigen::MatrixXcd S(mu, m);
        for (int j = 0; j < m; ++j) S.col(j) = W.row(drivers[j]).adjoint();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
        const double tol_abs = tol_.rank_tol * std::max(1.0, svd.singularValues()(0));
        if (svd_rank(svd.singularValues(), tol_abs) < mu) return false;
    }
    return true;
}

ControllerSet ControllabilityContext::sample(std::uint64_t seed) const {
    const int n = static_cast<int>(A_.rows());
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<int> order = random_permutation(n, rng);
        std::vector<int> drivers;
        try {
            drivers = greedy_real_
                          ? greedy_row_scan(anchor_real_, order, anchor_rank_,
                                            anchor_tol_abs_).second
                          : greedy_row_scan(anchor_cplx_, order, anchor_rank_,
                                            anchor_tol_abs_).second;
        } catch (const Error&) {
            continue; // marginal scan; another order may succeed
        }
        std::sort(drivers.begin(), drivers.end());
        if (verify(drivers)) return {std::move(drivers), lambda_m_};
    }
    throw SamplingError(
        "no verifiable minimum controller set in 32 attempts at lambda_M = " +
        complex_to_string(lambda_m_) +
        "; another degenerate eigenvalue obstructs the anchored sets");
}

std::vector<ControllerSet> ControllabilityContext::sample_many(int F,
                                                               std::uint64_t seed) const {
    if (F < 1) throw Error("sample count must be at least 1");
    std::vector<ControllerSet> sets;
    sets.reserve(F);
    for (int k = 0; k < F; ++k)
        sets.push_back(sample(split_seed(seed, static_cast<std::uint64_t>(k))));
    return sets;
}

ImportanceRanking ControllabilityContext::importance(int F, std::uint64_t seed) const {
    const int n = static_cast<int>(A_.rows());
    std::vector<long> counts(n, 0);
    for (const ControllerSet& set : sample_many(F, seed))
        for (int d : set.drivers) ++counts[d];
    ImportanceRanking ranking;
    ranking.kind = RankKind::linear;
    ranking.scope = "all";
    ranking.node_indices.resize(n);
    std::iota(ranking.node_indices.begin(), ranking.node_indices.end(), 0);
    ranking.values.reserve(n);
    for (long c : counts)
        ranking.values.push_back(static_cast<double>(c) / static_cast<double>(F));
    return ranking;
}

std::vector<ControllerSet> ControllabilityContext::enumerate(std::size_t cap) const {
    const int n = static_cast<int>(A_.rows());
    const int mu = n - anchor_rank_;

    // subsets are visited in lexicographic order; C(n, mu) must be sane
    double space = 1.0;
    for (int i = 0; i < mu; ++i) space *= static_cast<double>(n - i) / (i + 1);
    if (space > 2e6)
        throw Error("enumeration infeasible: C(" + std::to_string(n) + "," +
                    std::to_string(mu) + ") subsets");

    std::vector<ControllerSet> sets;
    std::vector<int> pick(mu);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        // complement rows must form a row basis of (lambda_M I - A)
        std::vector<int> comp;
        comp.reserve(n - mu);
        {
            std::size_t p = 0;
            for (int i = 0; i < n; ++i) {
                if (p < pick.size() && pick[p] == i) {
                    ++p;
                    continue;
                }
                comp.push_back(i);
            }
        }
        bool is_basis;
        if (comp.empty()) {
            is_basis = anchor_rank_ == 0;
        } else if (greedy_real_) {
            Eigen::MatrixXd R(comp.size(), n);
            for (std::size_t i = 0; i < comp.size(); ++i) R.row(i) = anchor_real_.row(comp[i]);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
            is_basis = svd_rank(svd.singularValues(), anchor_tol_abs_) == anchor_rank_;
        } else {
            Eigen::MatrixXcd R(comp.size(), n);
            for (std::size_t i = 0; i < comp.size(); ++i) R.row(i) = anchor_cplx_.row(comp[i]);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
            is_basis = svd_rank(svd.singularValues(), anchor_tol_abs_) == anchor_rank_;
        }
        if (is_basis && verify(pick)) {
            if (sets.size() == cap)
                throw Error("more than " + std::to_string(cap) + " controller sets");
            sets.push_back({pick, lambda_m_});
        }
        // next lexicographic mu-subset of {0..n-1}
        int i = mu - 1;
        while (i >= 0 && pick[i] == n - mu + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < mu; ++j) pick[j] = pick[j - 1] + 1;
    }
    return sets;
}

ControllerSet sample_controller_set(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                    std::uint64_t seed, const Tolerances& tol) {
    return ControllabilityContext(A, kind, tol).sample(seed);
}

bool verify_controllable(const Eigen::MatrixXd& A, const ControllerSet& set,
                         netio::NetworkKind kind, const Tolerances& tol) {
    return ControllabilityContext(A, kind, tol).verify(set.drivers);
}

ImportanceRanking linear_importance(const Eigen::MatrixXd& A, netio::NetworkKind kind,
                                    int F, std::uint64_t seed, const Tolerances& tol) {
    return ControllabilityContext(A, kind, tol).importance(F, seed);
}

std::vector<ControllerSet> enumerate_controller_sets(const Eigen::MatrixXd& A,
                                                     netio::NetworkKind kind,
                                                     std::size_t cap,
                                                     const Tolerances& tol) {
    return ControllabilityContext(A, kind, tol).enumerate(cap);
}

int kalman_rank(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double rank_tol) {
    check_square_finite(A);
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    if (B.rows() != n) throw Error("input matrix row count mismatch");
    if (n == 0 || m == 0) return 0;
    Eigen::MatrixXd K(n, n * m);
    Eigen::MatrixXd block = B;
    for (int p = 0; p < n; ++p) {
        K.middleCols(p * m, m) = block;
        if (p + 1 < n) block = A * block;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
    const double tol_abs = rank_tol * svd.singularValues()(0);
    return svd_rank(svd.singularValues(), tol_abs);
}

Eigen::MatrixXd input_matrix(int n, const std::vector<int>& drivers) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, static_cast<int>(drivers.size()));
    for (std::size_t j = 0; j < drivers.size(); ++j) {
        if (drivers[j] < 0 || drivers[j] >= n) throw Error("driver index out of range");
        B(drivers[j], static_cast<int>(j)) = 1.0;
    }
    return B;
}

} // namespace ctrlrank::linctrl
