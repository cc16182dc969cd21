#include "rankfuse/model/barc.hpp"

#include <cassert>

#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"

namespace rankfuse {

namespace {

#ifdef NDEBUG
constexpr int kConsistencyCheckEvery = 100;
#else
constexpr int kConsistencyCheckEvery = 1;
#endif

}  // namespace

void BarcConfig::validate() const {
    if (iterations <= 0) throw ValidationError("config: iterations must be positive");
    if (burn_in < 0 || burn_in >= iterations)
        throw ValidationError("config: need 0 <= burn_in < iterations");
    if (thin <= 0) throw ValidationError("config: thin must be positive");
    if (!(sigma_alpha > 0.0) || !(sigma_beta > 0.0))
        throw ValidationError("config: sigma_alpha and sigma_beta must be positive");
}

void DpConfig::validate() const {
    BarcConfig::validate();
    if (!(gamma > 0.0)) throw ValidationError("config: gamma must be positive");
}

std::vector<RankingList> simulate_rankings(
    const Eigen::Ref<const Eigen::VectorXd>& mu, double sigma, int m,
    const std::optional<std::vector<std::vector<int>>>& blocks, RngStream& rng) {
    const int n = static_cast<int>(mu.size());
    if (m < 1) throw std::invalid_argument("simulate_rankings: m must be >= 1");
    std::vector<RankingList> lists;
    lists.reserve(m);
    Eigen::VectorXd z(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) z[i] = rng.normal(mu[i], sigma);
        RankingList tau;
        tau.ranker_id = "sim-" + std::to_string(j + 1);
        if (!blocks) {
            tau.blocks.push_back(rank_of_scores(z).order());
        } else {
            for (const auto& group : *blocks) {
                Eigen::VectorXd sub(group.size());
                for (std::size_t t = 0; t < group.size(); ++t) sub[t] = z[group[t]];
                const FullRanking local = rank_of_scores(sub);
                std::vector<int> ordered(group.size());
                for (std::size_t t = 0; t < group.size(); ++t)
                    ordered[t] = group[local.entity_at(static_cast<int>(t))];
                tau.blocks.push_back(std::move(ordered));
            }
        }
        lists.push_back(std::move(tau));
    }
    return lists;
}

BarcSampler::BarcSampler(std::vector<RankingList> taus, const CovariateMatrix& X,
                         const BarcConfig& cfg)
    : taus_(std::move(taus)),
      cfg_(cfg),
      n_(X.n()),
      m_(static_cast<int>(taus_.size())),
      p_(X.p()),
      block_(X.values, cfg.sigma_alpha, cfg.sigma_beta),
      main_rng_(RngStream(cfg.seed, cfg.stream_id).substream(0)),
      sweep_count_(0) {
    cfg_.validate();
    if (m_ < 1) throw ValidationError("sampler: need at least one ranking list");
    std::vector<int> cover(n_, 0);
    neighbors_.reserve(m_);
    for (const auto& tau : taus_) {
        tau.validate(n_);
        neighbors_.push_back(RankingNeighbors::build(tau, n_));
        for (const auto& b : tau.blocks)
            for (int i : b) ++cover[i];
    }
    for (int i = 0; i < n_; ++i) {
        if (cover[i] == 0 && p_ == 0)
            warnings_.push_back("entity " + std::to_string(i) +
                                " is never ranked and has no covariates; its posterior is prior-driven");
    }
    Z_.resize(n_, m_);
    for (int j = 0; j < m_; ++j) init_latent_column(Z_.col(j), taus_[j]);
    alpha_ = Eigen::VectorXd::Zero(n_);
    beta_ = Eigen::VectorXd::Zero(p_);
    ranker_rng_.reserve(m_);
    const RngStream base(cfg.seed, cfg.stream_id);
    for (int j = 0; j < m_; ++j) ranker_rng_.push_back(base.substream(j + 1));
}

void BarcSampler::set_params(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) {
    alpha_ = alpha;
    beta_ = beta;
}

void BarcSampler::update_latent_scores() {
    Eigen::VectorXd mu = alpha_;
    if (p_ > 0) mu.noalias() += block_.X() * beta_;
    for (int j = 0; j < m_; ++j)
        gibbs_update_latent_column(Z_.col(j), mu, 1.0, neighbors_[j], ranker_rng_[j]);
}

bool BarcSampler::consistent(double tol) const {
    for (int j = 0; j < m_; ++j)
        if (!latent_column_consistent(Z_.col(j), neighbors_[j], tol)) return false;
    return true;
}

void BarcSampler::sweep() {
    update_latent_scores();
    if (cfg_.px_enabled) {
        if (cfg_.fixed_theta) {
            last_theta_ = *cfg_.fixed_theta;
        } else {
            const double S = marginal_quadratic_S(Z_, block_);
            last_theta_ = sample_theta(S, n_ * m_, main_rng_);
        }
        Z_ /= last_theta_;
    } else {
        last_theta_ = 1.0;
    }
    auto [alpha, beta] = sample_alpha_beta(Z_, 1.0, block_, main_rng_);
    alpha_ = std::move(alpha);
    beta_ = std::move(beta);
    ++sweep_count_;
    if (sweep_count_ % kConsistencyCheckEvery == 0 && !consistent())
        throw NumericalError("latent scores inconsistent with observed blocks after sweep " +
                             std::to_string(sweep_count_));
}

PosteriorDraws BarcSampler::run() {
    const int stored = (cfg_.iterations - cfg_.burn_in + cfg_.thin - 1) / cfg_.thin;
    PosteriorDraws draws;
    draws.model = cfg_.px_enabled ? "barc" : "barc-plain";
    draws.centered_mu.resize(stored, n_);
    draws.beta.resize(stored, p_);
    if (cfg_.px_enabled) draws.theta.resize(stored);
    draws.chain_id = static_cast<int>(cfg_.stream_id);
    draws.iterations = cfg_.iterations;
    draws.burn_in = cfg_.burn_in;
    draws.thin = cfg_.thin;
    draws.warnings = warnings_;

    int row = 0;
    for (int it = 0; it < cfg_.iterations; ++it) {
        sweep();
        if (it < cfg_.burn_in || (it - cfg_.burn_in) % cfg_.thin != 0) continue;
        Eigen::VectorXd mu = alpha_;
        if (p_ > 0) mu.noalias() += block_.X() * beta_;
        draws.centered_mu.row(row) = (mu.array() - mu.mean()).matrix().transpose();
        draws.beta.row(row) = beta_.transpose();
        if (cfg_.px_enabled) draws.theta[row] = last_theta_;
        ++row;
    }
    assert(row == stored);
    return draws;
}

PosteriorDraws run_barc(const std::vector<RankingList>& taus, const CovariateMatrix& X,
                        const BarcConfig& cfg) {
    BarcSampler sampler(taus, X, cfg);
    return sampler.run();
}

}  // namespace rankfuse
