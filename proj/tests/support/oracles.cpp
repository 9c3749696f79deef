#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "quasirank/rank_compare.hpp"

namespace quasirank::testing {

Eigen::MatrixXd dense_of(const TransitionBlock& T) {
    const auto rm = T.dense_rowmajor();
    const auto n = static_cast<Eigen::Index>(T.size());
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(rm.data(), n, n);
}

Eigen::MatrixXd dense_transition(const WebGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < g.size(); ++i) {
        if (g.is_dangling(i)) {
            P.row(i).setConstant(1.0 / static_cast<double>(n));
            continue;
        }
        const double p = 1.0 / static_cast<double>(g.out_degree(i));
        for (NodeId j : g.out_neighbors(i)) P(i, j) += p;
    }
    return P;
}

namespace {

Eigen::VectorXd dominant_vector(const Eigen::MatrixXd& M, double& lambda_out) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < M.rows(); ++k) {
        if (solver.eigenvalues()(k).real() > solver.eigenvalues()(best).real()) best = k;
    }
    if (std::abs(solver.eigenvalues()(best).imag()) > 1e-9)
        throw std::runtime_error("dominant eigenvalue came out complex");
    lambda_out = solver.eigenvalues()(best).real();
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    if (v.minCoeff() < -1e-8) throw std::runtime_error("dominant eigenvector not nonnegative");
    return v.cwiseMax(0.0);
}

} // namespace

OracleEigenPair oracle_dominant(const Eigen::MatrixXd& M) {
    OracleEigenPair out;
    double ll = 0.0, lr = 0.0;
    Eigen::VectorXd left = dominant_vector(M.transpose(), ll);
    Eigen::VectorXd right = dominant_vector(M, lr);
    if (std::abs(ll - lr) > 1e-9) throw std::runtime_error("left/right eigenvalues disagree");
    out.lambda1 = ll;
    out.left = (left / left.sum()).transpose();
    out.right = right * (static_cast<double>(M.rows()) / right.sum());
    return out;
}

Eigen::RowVectorXd oracle_occupation(const Eigen::MatrixXd& M) {
    const Eigen::Index n = M.rows();
    const Eigen::MatrixXd A = (Eigen::MatrixXd::Identity(n, n) - M).transpose();
    Eigen::VectorXd s = A.partialPivLu().solve(Eigen::VectorXd::Ones(n));
    return (s / s.sum()).transpose();
}

Eigen::RowVectorXd oracle_stationary(const Eigen::MatrixXd& M) {
    return oracle_dominant(M).left;
}

Eigen::RowVectorXd oracle_twisted_stationary(const Eigen::MatrixXd& T) {
    const OracleEigenPair pair = oracle_dominant(T);
    const Eigen::Index n = T.rows();
    Eigen::MatrixXd twisted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j)
            twisted(i, j) = T(i, j) * pair.right(j) / (pair.lambda1 * pair.right(i));
    }
    return oracle_stationary(twisted);
}

Eigen::RowVectorXd oracle_pagerank(const Eigen::MatrixXd& P, double damping, double tol) {
    const Eigen::Index n = P.rows();
    const Eigen::MatrixXd G = damping * P +
                              (1.0 - damping) / static_cast<double>(n) *
                                  Eigen::MatrixXd::Ones(n, n);
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < 1'000'000; ++it) {
        Eigen::RowVectorXd y = x * G;
        const double res = (y - x).cwiseAbs().sum();
        x = y;
        if (res <= tol) break;
    }
    return x / x.sum();
}

double brute_force_tau(const std::vector<double>& a, const std::vector<double>& b) {
    const Ranking ra = Ranking::of(a);
    const Ranking rb = Ranking::of(b);
    const std::size_t n = a.size();
    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0, ties_both = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool tie_a = ra.group_of[i] == ra.group_of[j];
            const bool tie_b = rb.group_of[i] == rb.group_of[j];
            if (tie_a && tie_b) ++ties_both;
            else if (tie_a) ++ties_a;
            else if (tie_b) ++ties_b;
            else {
                const bool up_a = ra.group_of[i] < ra.group_of[j];
                const bool up_b = rb.group_of[i] < rb.group_of[j];
                (up_a == up_b ? concordant : discordant)++;
            }
        }
    }
    const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
    const double s = static_cast<double>(concordant - discordant);
    if (ties_a == 0 && ties_b == 0 && ties_both == 0) return s / n0;
    const double na = n0 - static_cast<double>(ties_a + ties_both);
    const double nb = n0 - static_cast<double>(ties_b + ties_both);
    return s / std::sqrt(na * nb);
}

} // namespace quasirank::testing
