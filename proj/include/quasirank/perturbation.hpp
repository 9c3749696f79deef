#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "quasirank/block.hpp"

namespace quasirank {

/// Dense laboratory for the first-order theory around a stochastic kernel.
/// Everything here is deliberately dense and capped at cores of 2000 nodes:
/// the point is validating expansions, not scaling them.

/// T(eps) = T_bar - eps * D, substochastic across the whole epsilon grid.
struct PerturbationFamily {
    Eigen::MatrixXd T_bar;
    Eigen::MatrixXd D;
    std::vector<double> epsilons;  // strictly decreasing, positive

    Eigen::Index size() const { return T_bar.rows(); }
    Eigen::MatrixXd T_of(double eps) const { return T_bar - eps * D; }

    /// Family induced by a real core block: T_bar is the row-renormalized
    /// kernel, D = T_bar - T, so eps = 1 recovers the block itself.
    static PerturbationFamily from_block(const TransitionBlock& T,
                                         std::vector<double> grid = default_epsilon_grid());

    /// User-supplied pair; validates stochasticity of T_bar and filters the
    /// grid down to epsilons keeping T(eps) substochastic.
    static PerturbationFamily from_matrices(Eigen::MatrixXd T_bar, Eigen::MatrixXd D,
                                            std::vector<double> grid = default_epsilon_grid());

    static std::vector<double> default_epsilon_grid();
};

/// Stationary row of an irreducible stochastic matrix, damped dense power
/// iteration (reference-grade tolerance).
Eigen::RowVectorXd dense_stationary(const Eigen::MatrixXd& T_bar, double tol = 1e-13);

/// Dominant eigenpair of a nonnegative matrix: left vector sums to one,
/// right vector sums to the dimension.
struct DenseEigenPair {
    double lambda1 = 0.0;
    Eigen::RowVectorXd left;
    Eigen::VectorXd right;
};
DenseEigenPair dense_eigen(const Eigen::MatrixXd& M, double tol = 1e-13);

/// Occupation scores ones^T [I - T]^{-1}, normalized to sum one.
Eigen::RowVectorXd dense_occupation(const Eigen::MatrixXd& T);

/// Deviation matrix H = (I - T_bar + ones pi_bar)^{-1} - ones pi_bar.
/// Satisfies H ones = 0, pi_bar H = 0 and (I - T_bar) H = I - ones pi_bar.
Eigen::MatrixXd deviation_matrix(const Eigen::MatrixXd& T_bar, const Eigen::RowVectorXd& pi_bar);

/// Leading Laurent coefficients of [I - T(eps)]^{-1} together with the
/// cached contractions every first-order formula below draws from.
struct LaurentTerms {
    Eigen::MatrixXd X_minus1;
    Eigen::MatrixXd X_0;
    Eigen::MatrixXd H;
    Eigen::RowVectorXd pi_bar;
    Eigen::Index n_T = 0;

    double mean_exit = 0.0;          // pi_bar D ones
    Eigen::RowVectorXd pi_bar_DH;    // pi_bar D H
    Eigen::RowVectorXd ones_H;       // ones^T H
    Eigen::RowVectorXd ones_X0;      // ones^T X_0
    double ones_X0_ones = 0.0;       // ones^T X_0 ones
    Eigen::VectorXd HD_ones;         // H D ones
};

/// Throws ValidationError when pi_bar D ones <= 0 ("no exit in stationary
/// mean") and InternalError if the defining identities fail beyond 1e-9.
LaurentTerms laurent_terms(const PerturbationFamily& family, const Eigen::RowVectorXd& pi_bar,
                           const Eigen::MatrixXd& H);

/// Two independent first-order forms of the occupation scores; they agree
/// to second order and both approximate the exact value to o(eps).
struct FirstOrderPiHat {
    Eigen::RowVectorXd via_x0;
    Eigen::RowVectorXd via_h;
};
FirstOrderPiHat first_order_pi_hat(const LaurentTerms& t, double eps);

struct FirstOrderPiTilde {
    Eigen::RowVectorXd pi;
    double lambda1 = 1.0;
};
FirstOrderPiTilde first_order_pi_tilde(const LaurentTerms& t, double eps);

Eigen::VectorXd first_order_u_bar(const LaurentTerms& t, double eps);

enum class Expansion {
    ResolventAbs,  // max-abs gap to X_minus1/eps + X_0 (O(eps))
    ResolventRel,  // same gap scaled by eps, i.e. against the leading
                   // 1/eps Laurent term (O(eps^2))
    PiHatViaX0,
    PiHatViaH,
    PiTilde,
    UBar,
    Lambda1,
};

const char* expansion_name(Expansion e);

/// Residual of one expansion at one eps against the dense exact reference.
double expansion_residual(const PerturbationFamily& family, const LaurentTerms& t, Expansion which,
                          double eps);

struct ExpansionReport {
    std::vector<double> epsilons;
    std::map<std::string, std::vector<double>> residuals;  // keyed by expansion_name
    std::map<std::string, double> fitted_exponents;        // log-log slope
};

ExpansionReport expansion_report(const PerturbationFamily& family);

} // namespace quasirank
