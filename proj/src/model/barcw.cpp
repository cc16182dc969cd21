#include "rankfuse/model/barcw.hpp"

#include <cassert>
#include <cmath>

#include "rankfuse/errors.hpp"

namespace rankfuse {

namespace {

#ifdef NDEBUG
constexpr int kConsistencyCheckEvery = 100;
#else
constexpr int kConsistencyCheckEvery = 1;
#endif

}  // namespace

Eigen::VectorXd weight_conditional_probs(int n, double rss, const std::vector<double>& support) {
    Eigen::VectorXd logp(support.size());
    for (std::size_t t = 0; t < support.size(); ++t)
        logp[t] = 0.5 * n * std::log(support[t]) - 0.5 * support[t] * rss;
    const double mx = logp.maxCoeff();
    Eigen::VectorXd probs = (logp.array() - mx).exp();
    probs /= probs.sum();
    return probs;
}

Eigen::VectorXd gibbs_update_weights(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                     const Eigen::Ref<const Eigen::VectorXd>& mu,
                                     const std::vector<double>& support, RngStream& rng) {
    const int n = static_cast<int>(Z.rows());
    const int m = static_cast<int>(Z.cols());
    Eigen::VectorXd w(m);
    for (int j = 0; j < m; ++j) {
        const double rss = (Z.col(j) - mu).squaredNorm();
        if (!std::isfinite(rss)) throw NumericalError("gibbs_update_weights: non-finite residual");
        const Eigen::VectorXd probs = weight_conditional_probs(n, rss, support);
        double u = rng.uniform();
        std::size_t pick = support.size() - 1;
        for (std::size_t t = 0; t < support.size(); ++t) {
            if (u < probs[t]) {
                pick = t;
                break;
            }
            u -= probs[t];
        }
        w[j] = support[pick];
    }
    return w;
}

BarcwSampler::BarcwSampler(std::vector<RankingList> taus, const CovariateMatrix& X,
                           const BarcConfig& cfg, std::vector<double> support)
    : taus_(std::move(taus)),
      cfg_(cfg),
      support_(std::move(support)),
      n_(X.n()),
      m_(static_cast<int>(taus_.size())),
      p_(X.p()),
      block_(X.values, cfg.sigma_alpha, cfg.sigma_beta),
      main_rng_(RngStream(cfg.seed, cfg.stream_id).substream(0)) {
    cfg_.validate();
    if (m_ < 1) throw ValidationError("sampler: need at least one ranking list");
    if (support_.empty()) throw ValidationError("barcw: weight support must be non-empty");
    for (double s : support_)
        if (!(s > 0.0)) throw ValidationError("barcw: weight support must be positive");
    neighbors_.reserve(m_);
    for (const auto& tau : taus_) {
        tau.validate(n_);
        neighbors_.push_back(RankingNeighbors::build(tau, n_));
    }
    Z_.resize(n_, m_);
    for (int j = 0; j < m_; ++j) init_latent_column(Z_.col(j), taus_[j]);
    alpha_ = Eigen::VectorXd::Zero(n_);
    beta_ = Eigen::VectorXd::Zero(p_);
    w_ = Eigen::VectorXd::Ones(m_);
    const RngStream base(cfg.seed, cfg.stream_id);
    ranker_rng_.reserve(m_);
    for (int j = 0; j < m_; ++j) ranker_rng_.push_back(base.substream(j + 1));
}

void BarcwSampler::set_state(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                             const Eigen::VectorXd& w) {
    alpha_ = alpha;
    beta_ = beta;
    w_ = w;
}

bool BarcwSampler::consistent(double tol) const {
    for (int j = 0; j < m_; ++j)
        if (!latent_column_consistent(Z_.col(j), neighbors_[j], tol)) return false;
    return true;
}

void BarcwSampler::sweep() {
    Eigen::VectorXd mu = alpha_;
    if (p_ > 0) mu.noalias() += block_.X() * beta_;
    // step 1: latent scan at per-ranker variance w_j^{-1}
    for (int j = 0; j < m_; ++j)
        gibbs_update_latent_column(Z_.col(j), mu, 1.0 / std::sqrt(w_[j]), neighbors_[j],
                                   ranker_rng_[j]);
    // step 2: scale move
    if (cfg_.px_enabled) {
        const double S = marginal_quadratic_S(Z_, w_, block_);
        last_theta_ = sample_theta(S, n_ * m_, main_rng_);
        Z_ /= last_theta_;
    } else {
        last_theta_ = 1.0;
    }
    // step 3: weighted parameter draw
    auto [alpha, beta] = sample_alpha_beta(Z_, w_, 1.0, block_, main_rng_);
    alpha_ = std::move(alpha);
    beta_ = std::move(beta);
    // step 4: weights
    mu = alpha_;
    if (p_ > 0) mu.noalias() += block_.X() * beta_;
    w_ = gibbs_update_weights(Z_, mu, support_, main_rng_);
    ++sweep_count_;
    if (sweep_count_ % kConsistencyCheckEvery == 0 && !consistent())
        throw NumericalError("latent scores inconsistent with observed blocks after sweep " +
                             std::to_string(sweep_count_));
}

PosteriorDraws BarcwSampler::run() {
    const int stored = (cfg_.iterations - cfg_.burn_in + cfg_.thin - 1) / cfg_.thin;
    PosteriorDraws draws;
    draws.model = "barcw";
    draws.centered_mu.resize(stored, n_);
    draws.beta.resize(stored, p_);
    draws.weights.resize(stored, m_);
    if (cfg_.px_enabled) draws.theta.resize(stored);
    draws.chain_id = static_cast<int>(cfg_.stream_id);
    draws.iterations = cfg_.iterations;
    draws.burn_in = cfg_.burn_in;
    draws.thin = cfg_.thin;
    int row = 0;
    for (int it = 0; it < cfg_.iterations; ++it) {
        sweep();
        if (it < cfg_.burn_in || (it - cfg_.burn_in) % cfg_.thin != 0) continue;
        Eigen::VectorXd mu = alpha_;
        if (p_ > 0) mu.noalias() += block_.X() * beta_;
        draws.centered_mu.row(row) = (mu.array() - mu.mean()).matrix().transpose();
        draws.beta.row(row) = beta_.transpose();
        draws.weights.row(row) = w_.transpose();
        if (cfg_.px_enabled) draws.theta[row] = last_theta_;
        ++row;
    }
    assert(row == stored);
    return draws;
}

PosteriorDraws run_barcw(const std::vector<RankingList>& taus, const CovariateMatrix& X,
                         const BarcConfig& cfg, const std::vector<double>& support) {
    BarcwSampler sampler(taus, X, cfg, support);
    return sampler.run();
}

}  // namespace rankfuse
