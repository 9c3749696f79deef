#include "quasirank/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "quasirank/errors.hpp"

namespace quasirank {

namespace {

constexpr std::size_t LAB_CAP = 2000;

void validate_grid(const PerturbationFamily& f, std::vector<double>& grid) {
    std::sort(grid.begin(), grid.end(), std::greater<>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<double> kept;
    for (double eps : grid) {
        if (eps <= 0.0) continue;
        Eigen::MatrixXd T = f.T_of(eps);
        if (T.minCoeff() < -1e-14) continue;
        if ((T.rowwise().sum().array() > 1.0 + 1e-12).any()) continue;
        kept.push_back(eps);
    }
    if (kept.empty())
        throw ValidationError("epsilon grid empty: no grid point keeps T(eps) substochastic");
    grid = std::move(kept);
}

} // namespace

std::vector<double> PerturbationFamily::default_epsilon_grid() {
    return {1e-1, 5e-2, 1e-2, 5e-3, 1e-3, 5e-4, 1e-4};
}

PerturbationFamily PerturbationFamily::from_block(const TransitionBlock& T,
                                                  std::vector<double> grid) {
    const std::size_t n = T.size();
    if (n > LAB_CAP)
        throw ValidationError("perturbation lab is capped at 2000 core nodes");
    auto t_dense = T.dense_rowmajor(LAB_CAP);
    auto tbar_dense = T.conditional().dense_rowmajor(LAB_CAP);
    PerturbationFamily f;
    f.T_bar = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        tbar_dense.data(), n, n);
    Eigen::MatrixXd t =
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            t_dense.data(), n, n);
    f.D = f.T_bar - t;
    validate_grid(f, grid);
    f.epsilons = std::move(grid);
    return f;
}

PerturbationFamily PerturbationFamily::from_matrices(Eigen::MatrixXd T_bar, Eigen::MatrixXd D,
                                                     std::vector<double> grid) {
    if (T_bar.rows() != T_bar.cols() || D.rows() != D.cols() || T_bar.rows() != D.rows())
        throw ValidationError("perturbation family needs square matrices of equal size");
    if (static_cast<std::size_t>(T_bar.rows()) > LAB_CAP)
        throw ValidationError("perturbation lab is capped at 2000 core nodes");
    if (((T_bar.rowwise().sum().array() - 1.0).abs() > 1e-9).any())
        throw ValidationError("T_bar must be row stochastic");
    if ((D.rowwise().sum().array() < -1e-12).any())
        throw ValidationError("perturbation rows must not add mass: D needs nonnegative "
                              "row sums");
    PerturbationFamily f;
    f.T_bar = std::move(T_bar);
    f.D = std::move(D);
    validate_grid(f, grid);
    f.epsilons = std::move(grid);
    return f;
}

namespace {

// Dense damped power iteration, shared by the stationary and eigenpair
// references. apply must fill y from x.
template <typename Apply>
std::pair<Eigen::VectorXd, double> dense_power(Eigen::Index n, Apply&& apply, double tol) {
    constexpr std::size_t MAX_IT = 2'000'000;
    constexpr std::size_t PLAIN_BUDGET = 512;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    Eigen::VectorXd y(n);
    double lambda_prev = -1.0;
    bool damped = false;
    for (std::size_t it = 1; it <= MAX_IT; ++it) {
        apply(x, y);
        const double lambda = y.cwiseAbs().sum();
        if (lambda <= 0.0) throw ValidationError("dense power iteration hit the zero vector");
        if (damped)
            y = 0.5 * x + (0.5 / lambda) * y;
        else
            y /= lambda;
        const double res = (y - x).cwiseAbs().sum();
        const double dlam = std::abs(lambda - lambda_prev);
        x.swap(y);
        lambda_prev = lambda;
        if (res <= tol && dlam <= tol) break;
        if (!damped && it >= PLAIN_BUDGET) damped = true;
        if (it == MAX_IT)
            throw ConvergenceError("dense power iteration did not converge", res, it);
    }
    x /= x.sum();
    return {std::move(x), lambda_prev};
}

} // namespace

Eigen::RowVectorXd dense_stationary(const Eigen::MatrixXd& T_bar, double tol) {
    auto [x, lambda] = dense_power(
        T_bar.rows(),
        [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = T_bar.transpose() * in; },
        tol);
    (void)lambda;
    return x.transpose();
}

DenseEigenPair dense_eigen(const Eigen::MatrixXd& M, double tol) {
    DenseEigenPair out;
    auto [left, ll] = dense_power(
        M.rows(), [&](const Eigen::VectorXd& in, Eigen::VectorXd& o) { o = M.transpose() * in; },
        tol);
    auto [right, lr] = dense_power(
        M.rows(), [&](const Eigen::VectorXd& in, Eigen::VectorXd& o) { o = M * in; }, tol);
    (void)lr;
    out.lambda1 = ll;
    out.left = left.transpose();
    out.right = right * static_cast<double>(M.rows());
    return out;
}

Eigen::RowVectorXd dense_occupation(const Eigen::MatrixXd& T) {
    const Eigen::Index n = T.rows();
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - T;
    Eigen::RowVectorXd s =
        A.transpose().partialPivLu().solve(Eigen::VectorXd::Ones(n)).transpose();
    return s / s.sum();
}

Eigen::MatrixXd deviation_matrix(const Eigen::MatrixXd& T_bar, const Eigen::RowVectorXd& pi_bar) {
    const Eigen::Index n = T_bar.rows();
    const Eigen::MatrixXd ones_pi = Eigen::VectorXd::Ones(n) * pi_bar;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - T_bar + ones_pi);
    if (!lu.isInvertible())
        throw ValidationError("deviation matrix undefined: I - T_bar + ones*pi_bar is singular "
                              "(T_bar reducible or pi_bar not stationary)");
    Eigen::MatrixXd H = lu.inverse() - ones_pi;
    if ((H.rowwise().sum().cwiseAbs().maxCoeff() > 1e-10) ||
        ((pi_bar * H).cwiseAbs().maxCoeff() > 1e-10))
        throw ValidationError("deviation matrix checks failed: pi_bar is not the stationary "
                              "row of T_bar");
    return H;
}

LaurentTerms laurent_terms(const PerturbationFamily& family, const Eigen::RowVectorXd& pi_bar,
                           const Eigen::MatrixXd& H) {
    const Eigen::Index n = family.size();
    LaurentTerms t;
    t.H = H;
    t.pi_bar = pi_bar;
    t.n_T = n;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    t.mean_exit = pi_bar * family.D * ones;
    if (!(t.mean_exit > 0.0)) throw ValidationError("no exit in stationary mean");

    t.X_minus1 = (ones * pi_bar) / t.mean_exit;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    t.X_0 = (I - t.X_minus1 * family.D) * H * (I - family.D * t.X_minus1);

    // defining identities of the two leading coefficients
    const Eigen::MatrixXd ImT = I - family.T_bar;
    if ((ImT * t.X_minus1).cwiseAbs().maxCoeff() > 1e-9 ||
        (ImT * t.X_0 + family.D * t.X_minus1 - I).cwiseAbs().maxCoeff() > 1e-9)
        throw InternalError("Laurent coefficients violate their defining identities");

    t.pi_bar_DH = pi_bar * family.D * H;
    t.ones_H = ones.transpose() * H;
    t.ones_X0 = ones.transpose() * t.X_0;
    t.ones_X0_ones = t.ones_X0 * ones;
    t.HD_ones = H * family.D * ones;
    return t;
}

FirstOrderPiHat first_order_pi_hat(const LaurentTerms& t, double eps) {
    FirstOrderPiHat out;
    const double w = eps * t.mean_exit / static_cast<double>(t.n_T);
    out.via_x0 = t.pi_bar + w * (t.ones_X0 - t.ones_X0_ones * t.pi_bar);
    out.via_h = t.pi_bar + (w * t.ones_H - eps * t.pi_bar_DH);
    return out;
}

FirstOrderPiTilde first_order_pi_tilde(const LaurentTerms& t, double eps) {
    FirstOrderPiTilde out;
    out.pi = t.pi_bar - eps * t.pi_bar_DH;
    out.lambda1 = 1.0 - eps * t.mean_exit;
    return out;
}

Eigen::VectorXd first_order_u_bar(const LaurentTerms& t, double eps) {
    return Eigen::VectorXd::Ones(t.n_T) - eps * t.HD_ones;
}

const char* expansion_name(Expansion e) {
    switch (e) {
        case Expansion::ResolventAbs: return "resolvent_abs";
        case Expansion::ResolventRel: return "resolvent_rel";
        case Expansion::PiHatViaX0: return "pi_hat_via_x0";
        case Expansion::PiHatViaH: return "pi_hat_via_h";
        case Expansion::PiTilde: return "pi_tilde";
        case Expansion::UBar: return "u_bar";
        case Expansion::Lambda1: return "lambda1";
    }
    return "?";
}

double expansion_residual(const PerturbationFamily& family, const LaurentTerms& t, Expansion which,
                          double eps) {
    const Eigen::Index n = family.size();
    const Eigen::MatrixXd T = family.T_of(eps);
    switch (which) {
        case Expansion::ResolventAbs:
        case Expansion::ResolventRel: {
            Eigen::MatrixXd resolvent =
                (Eigen::MatrixXd::Identity(n, n) - T).partialPivLu().inverse();
            const double gap = (resolvent - (t.X_minus1 / eps + t.X_0)).cwiseAbs().maxCoeff();
            return which == Expansion::ResolventAbs ? gap : gap * eps;
        }
        case Expansion::PiHatViaX0:
        case Expansion::PiHatViaH: {
            const Eigen::RowVectorXd exact = dense_occupation(T);
            const auto approx = first_order_pi_hat(t, eps);
            const Eigen::RowVectorXd& a =
                which == Expansion::PiHatViaX0 ? approx.via_x0 : approx.via_h;
            return (exact - a).cwiseAbs().sum();
        }
        case Expansion::PiTilde: {
            const auto pair = dense_eigen(T);
            return (pair.left - first_order_pi_tilde(t, eps).pi).cwiseAbs().sum();
        }
        case Expansion::UBar: {
            const auto pair = dense_eigen(T);
            const double mass = t.pi_bar * pair.right;
            const Eigen::VectorXd u_bar = pair.right / mass;
            return (u_bar - first_order_u_bar(t, eps)).cwiseAbs().sum();
        }
        case Expansion::Lambda1: {
            const auto pair = dense_eigen(T);
            return std::abs(pair.lambda1 - first_order_pi_tilde(t, eps).lambda1);
        }
    }
    throw InternalError("unknown expansion");
}

ExpansionReport expansion_report(const PerturbationFamily& family) {
    const Eigen::RowVectorXd pi_bar = dense_stationary(family.T_bar);
    const Eigen::MatrixXd H = deviation_matrix(family.T_bar, pi_bar);
    const LaurentTerms terms = laurent_terms(family, pi_bar, H);

    ExpansionReport report;
    report.epsilons = family.epsilons;
    const Expansion all[] = {Expansion::ResolventAbs, Expansion::ResolventRel,
                             Expansion::PiHatViaX0,   Expansion::PiHatViaH,
                             Expansion::PiTilde,      Expansion::UBar,
                             Expansion::Lambda1};
    for (Expansion e : all) {
        std::vector<double> res;
        res.reserve(family.epsilons.size());
        for (double eps : family.epsilons)
            res.push_back(expansion_residual(family, terms, e, eps));
        // least-squares slope of log residual against log eps
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (std::size_t k = 0; k < res.size(); ++k) {
            if (res[k] < 1e-14) continue;  // rounding floor
            const double lx = std::log(family.epsilons[k]);
            const double ly = std::log(res[k]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        const double denom = static_cast<double>(m) * sxx - sx * sx;
        report.fitted_exponents[expansion_name(e)] =
            m >= 2 && std::abs(denom) > 0 ? (static_cast<double>(m) * sxy - sx * sy) / denom
                                          : 0.0;
        report.residuals[expansion_name(e)] = std::move(res);
    }
    return report;
}

} // namespace quasirank
