#ifndef RANKFUSE_MODEL_DESIGN_BLOCK_HPP
#define RANKFUSE_MODEL_DESIGN_BLOCK_HPP

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "rankfuse/random/rng.hpp"

namespace rankfuse {

// Design algebra shared by the samplers: V = (I_n | X) and the diagonal
// prior precision Lambda^{-1} = diag(sigma_alpha^{-2} I_n, sigma_beta^{-2} I_p).
// Cholesky factorizations of M_c = Lambda^{-1} + c V'V are cached per
// multiplicity c; Lambda and V are fixed for the lifetime of the block, so
// the cache is never invalidated. Warm the cache single-threaded; afterwards
// lookups are read-only.
class DesignBlock {
public:
    DesignBlock(const Eigen::MatrixXd& X, double sigma_alpha, double sigma_beta);

    int n() const { return n_; }
    int p() const { return p_; }
    int dim() const { return n_ + p_; }
    const Eigen::MatrixXd& X() const { return X_; }
    double sigma_alpha() const { return sigma_alpha_; }
    double sigma_beta() const { return sigma_beta_; }

    // V' s = (s, X' s) for s in R^n
    Eigen::VectorXd vt_times(const Eigen::Ref<const Eigen::VectorXd>& s) const;

    // Dense M_c, for verification against the cached factorization.
    Eigen::MatrixXd m_matrix(double c) const;

    const Eigen::LLT<Eigen::MatrixXd>& factor(double c) const;

    // log det(M_c) from the cached factorization; c = 0 gives log det(Lambda^{-1}).
    double log_det(double c) const;

private:
    int n_, p_;
    double sigma_alpha_, sigma_beta_;
    Eigen::MatrixXd X_;
    Eigen::MatrixXd vtv_;             // V'V, (n+p) x (n+p)
    Eigen::VectorXd lambda_inv_diag_; // n+p
    mutable std::map<double, Eigen::LLT<Eigen::MatrixXd>> cache_;
};

// S = sum_j w_j Z_j'Z_j - u' M_c^{-1} u with u = V' sum_j w_j Z_j and
// c = sum_j w_j. Nonnegative; zero iff Z = 0. Unweighted callers pass
// weights of ones (multiplicity m).
double marginal_quadratic_S(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                            const Eigen::Ref<const Eigen::VectorXd>& weights,
                            const DesignBlock& block);
double marginal_quadratic_S(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                            const DesignBlock& block);

// theta > 0 with theta^2 ~ S / chi^2_dof. S <= 0 signals an upstream bug.
double sample_theta(double S, int dof, RngStream& rng);

// Draw from N(M_c^{-1} u / theta, M_c^{-1}) given the sufficient summary
// (u, c); the matrix overloads below reduce to this.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta_from_summary(
    const Eigen::Ref<const Eigen::VectorXd>& u, double c, double theta,
    const DesignBlock& block, RngStream& rng);

// Exact draw from N(eta_hat / theta, M_c^{-1}) where
// eta_hat = M_c^{-1} V' sum_j w_j Z_j, c = sum_j w_j.
// Returns (alpha, beta).
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta(
    const Eigen::Ref<const Eigen::MatrixXd>& Z,
    const Eigen::Ref<const Eigen::VectorXd>& weights, double theta,
    const DesignBlock& block, RngStream& rng);
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta(
    const Eigen::Ref<const Eigen::MatrixXd>& Z, double theta, const DesignBlock& block,
    RngStream& rng);

}  // namespace rankfuse

#endif
