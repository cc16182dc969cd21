#include "rankfuse/model/design_block.hpp"

#include <cmath>
#include <stdexcept>

#include "rankfuse/errors.hpp"

namespace rankfuse {

DesignBlock::DesignBlock(const Eigen::MatrixXd& X, double sigma_alpha, double sigma_beta)
    : n_(static_cast<int>(X.rows())),
      p_(static_cast<int>(X.cols())),
      sigma_alpha_(sigma_alpha),
      sigma_beta_(sigma_beta),
      X_(X) {
    if (!(sigma_alpha > 0.0) || !(sigma_beta > 0.0))
        throw std::invalid_argument("DesignBlock: sigma_alpha and sigma_beta must be > 0");
    const int d = dim();
    vtv_.resize(d, d);
    vtv_.topLeftCorner(n_, n_) = Eigen::MatrixXd::Identity(n_, n_);
    if (p_ > 0) {
        vtv_.topRightCorner(n_, p_) = X_;
        vtv_.bottomLeftCorner(p_, n_) = X_.transpose();
        vtv_.bottomRightCorner(p_, p_) = X_.transpose() * X_;
    }
    lambda_inv_diag_.resize(d);
    lambda_inv_diag_.head(n_).setConstant(1.0 / (sigma_alpha * sigma_alpha));
    if (p_ > 0) lambda_inv_diag_.tail(p_).setConstant(1.0 / (sigma_beta * sigma_beta));
}

Eigen::VectorXd DesignBlock::vt_times(const Eigen::Ref<const Eigen::VectorXd>& s) const {
    Eigen::VectorXd u(dim());
    u.head(n_) = s;
    if (p_ > 0) u.tail(p_).noalias() = X_.transpose() * s;
    return u;
}

Eigen::MatrixXd DesignBlock::m_matrix(double c) const {
    Eigen::MatrixXd M = c * vtv_;
    M.diagonal() += lambda_inv_diag_;
    return M;
}

const Eigen::LLT<Eigen::MatrixXd>& DesignBlock::factor(double c) const {
    auto it = cache_.find(c);
    if (it == cache_.end()) {
        Eigen::LLT<Eigen::MatrixXd> llt(m_matrix(c));
        if (llt.info() != Eigen::Success)
            throw NumericalError("DesignBlock: factorization of M_c failed");
        it = cache_.emplace(c, std::move(llt)).first;
    }
    return it->second;
}

double DesignBlock::log_det(double c) const {
    const Eigen::MatrixXd& L = factor(c).matrixLLT();
    double acc = 0.0;
    for (int i = 0; i < dim(); ++i) acc += std::log(L(i, i));
    return 2.0 * acc;
}

double marginal_quadratic_S(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                            const Eigen::Ref<const Eigen::VectorXd>& weights,
                            const DesignBlock& block) {
    if (Z.cols() != weights.size() || weights.size() == 0)
        throw std::invalid_argument("marginal_quadratic_S: weights must match ranker count");
    if (!Z.allFinite()) throw std::invalid_argument("marginal_quadratic_S: non-finite Z");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("marginal_quadratic_S: weights must be > 0");
    const double c = weights.sum();
    Eigen::VectorXd s = Z * weights;  // sum_j w_j Z_j
    Eigen::VectorXd u = block.vt_times(s);
    Eigen::VectorXd y = block.factor(c).solve(u);
    double quad = 0.0;
    for (Eigen::Index j = 0; j < Z.cols(); ++j) quad += weights[j] * Z.col(j).squaredNorm();
    const double S = quad - u.dot(y);
    return S > 0.0 ? S : 0.0;
}

double marginal_quadratic_S(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                            const DesignBlock& block) {
    return marginal_quadratic_S(Z, Eigen::VectorXd::Ones(Z.cols()), block);
}

double sample_theta(double S, int dof, RngStream& rng) {
    if (!(S > 0.0)) throw NumericalError("sample_theta: S must be > 0");
    if (dof < 1) throw std::invalid_argument("sample_theta: dof must be >= 1");
    double c;
    do {
        c = rng.chi_square(dof);
    } while (!(c > 0.0));
    return std::sqrt(S / c);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta_from_summary(
    const Eigen::Ref<const Eigen::VectorXd>& u, double c, double theta,
    const DesignBlock& block, RngStream& rng) {
    if (!(theta > 0.0)) throw std::invalid_argument("sample_alpha_beta: theta must be > 0");
    const auto& llt = block.factor(c);
    Eigen::VectorXd mean = llt.solve(u) / theta;
    Eigen::VectorXd z(block.dim());
    for (int i = 0; i < block.dim(); ++i) z[i] = rng.normal();
    // M = L L'; L'^{-1} z has covariance M^{-1}
    Eigen::VectorXd draw = mean + llt.matrixU().solve(z);
    return {draw.head(block.n()), draw.tail(block.p())};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta(
    const Eigen::Ref<const Eigen::MatrixXd>& Z,
    const Eigen::Ref<const Eigen::VectorXd>& weights, double theta,
    const DesignBlock& block, RngStream& rng) {
    const double c = weights.sum();
    Eigen::VectorXd u = block.vt_times(Z * weights);
    return sample_alpha_beta_from_summary(u, c, theta, block, rng);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_alpha_beta(
    const Eigen::Ref<const Eigen::MatrixXd>& Z, double theta, const DesignBlock& block,
    RngStream& rng) {
    return sample_alpha_beta(Z, Eigen::VectorXd::Ones(Z.cols()), theta, block, rng);
}

}  // namespace rankfuse
