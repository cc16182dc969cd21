#include "rankfuse/model/barcm.hpp"

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

int categorical_from_log(const std::vector<double>& logw, RngStream& rng) {
    double mx = logw[0];
    for (double v : logw) mx = std::max(mx, v);
    double total = 0.0;
    std::vector<double> w(logw.size());
    for (std::size_t t = 0; t < logw.size(); ++t) {
        w[t] = std::exp(logw[t] - mx);
        total += w[t];
    }
    double u = rng.uniform() * total;
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
        if (u < w[t]) return static_cast<int>(t);
        u -= w[t];
    }
    return static_cast<int>(w.size()) - 1;
}

}  // namespace

double crp_expected_clusters(int m, double gamma) {
    if (m < 1) throw std::invalid_argument("crp_expected_clusters: m must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("crp_expected_clusters: gamma must be > 0");
    double total = 0.0;
    for (int j = 1; j <= m; ++j) total += gamma / (j + gamma - 1.0);
    return total;
}

BarcmSampler::BarcmSampler(std::vector<RankingList> taus, const CovariateMatrix& X,
                           const DpConfig& cfg)
    : taus_(std::move(taus)),
      cfg_(cfg),
      n_(X.n()),
      m_(static_cast<int>(taus_.size())),
      p_(X.p()),
      block_(X.values, cfg.sigma_alpha, cfg.sigma_beta),
      main_rng_(RngStream(cfg.seed, cfg.stream_id).substream(0)) {
    cfg_.validate();
    if (m_ < 1) throw ValidationError("sampler: need at least one ranking list");
    neighbors_.reserve(m_);
    for (const auto& tau : taus_) {
        tau.validate(n_);
        neighbors_.push_back(RankingNeighbors::build(tau, n_));
    }
    Z_.resize(n_, m_);
    for (int j = 0; j < m_; ++j) init_latent_column(Z_.col(j), taus_[j]);
    const RngStream base(cfg.seed, cfg.stream_id);
    ranker_rng_.reserve(m_);
    for (int j = 0; j < m_; ++j) ranker_rng_.push_back(base.substream(j + 1));
    // start with all rankers in one cluster at zero parameters
    q_.assign(m_, 0);
    Cluster c;
    c.alpha = Eigen::VectorXd::Zero(n_);
    c.beta = Eigen::VectorXd::Zero(p_);
    clusters_.push_back(std::move(c));
    refresh_latent_summaries();
    aggregate_sum_ = Eigen::VectorXd::Zero(n_);
}

double BarcmSampler::cluster_marginal(double zz, const Eigen::VectorXd& u, int size) const {
    const double S = zz - u.dot(block_.factor(static_cast<double>(size)).solve(u));
    return S > 0.0 ? S : 0.0;
}

void BarcmSampler::refresh_latent_summaries() {
    vtz_.resize(m_);
    zznorm_.resize(m_);
    for (int j = 0; j < m_; ++j) {
        vtz_[j] = block_.vt_times(Z_.col(j));
        zznorm_[j] = Z_.col(j).squaredNorm();
    }
    for (auto& c : clusters_) {
        c.size = 0;
        c.zz = 0.0;
        c.u = Eigen::VectorXd::Zero(block_.dim());
    }
    for (int j = 0; j < m_; ++j) {
        Cluster& c = clusters_[q_[j]];
        ++c.size;
        c.zz += zznorm_[j];
        c.u += vtz_[j];
    }
    for (auto& c : clusters_) c.s_marg = c.size > 0 ? cluster_marginal(c.zz, c.u, c.size) : 0.0;
}

void BarcmSampler::remove_from_cluster(int j) {
    const int k = q_[j];
    Cluster& c = clusters_[k];
    --c.size;
    c.zz -= zznorm_[j];
    c.u -= vtz_[j];
    q_[j] = -1;
    if (c.size == 0) {
        const int last = cluster_count() - 1;
        if (k != last) {
            clusters_[k] = std::move(clusters_[last]);
            for (int r = 0; r < m_; ++r)
                if (q_[r] == last) q_[r] = k;
        }
        clusters_.pop_back();
    } else {
        c.s_marg = cluster_marginal(c.zz, c.u, c.size);
    }
}

void BarcmSampler::insert_into_cluster(int j, int k) {
    Cluster& c = clusters_[k];
    ++c.size;
    c.zz += zznorm_[j];
    c.u += vtz_[j];
    c.s_marg = cluster_marginal(c.zz, c.u, c.size);
    q_[j] = k;
}

int BarcmSampler::open_cluster(int j) {
    Cluster c;
    c.size = 1;
    c.zz = zznorm_[j];
    c.u = vtz_[j];
    c.s_marg = cluster_marginal(c.zz, c.u, 1);
    // fresh cluster parameters from their conditional given the single member
    auto [alpha, beta] = sample_alpha_beta(Z_.col(j), 1.0, block_, main_rng_);
    c.alpha = std::move(alpha);
    c.beta = std::move(beta);
    clusters_.push_back(std::move(c));
    q_[j] = cluster_count() - 1;
    return q_[j];
}

void BarcmSampler::update_allocation_for(int j, bool prior_only) {
    remove_from_cluster(j);
    const int K = cluster_count();
    // collapsed conditional: CRP mass times the Gaussian marginal ratio
    //   p(Z_j | Z_{A_k}) = (2pi)^{-n/2} sqrt(det M_c / det M_{c+1})
    //                      exp(-S_with/2 + S_without/2)
    // (the determinant ratio depends on the cluster size and must be kept)
    std::vector<double> logw(K + 1);
    for (int k = 0; k < K; ++k) {
        const Cluster& c = clusters_[k];
        logw[k] = std::log(static_cast<double>(c.size));
        if (!prior_only) {
            const double s_with =
                cluster_marginal(c.zz + zznorm_[j], c.u + vtz_[j], c.size + 1);
            logw[k] += -0.5 * s_with + 0.5 * c.s_marg;
            logw[k] += -0.5 * (block_.log_det(c.size + 1.0) - block_.log_det(c.size));
        }
    }
    logw[K] = std::log(cfg_.gamma);
    if (!prior_only) {
        logw[K] += -0.5 * cluster_marginal(zznorm_[j], vtz_[j], 1);
        logw[K] += -0.5 * (block_.log_det(1.0) - block_.log_det(0.0));
    }
    const int pick = categorical_from_log(logw, main_rng_);
    if (pick < K) {
        insert_into_cluster(j, pick);
    } else {
        open_cluster(j);
    }
}

void BarcmSampler::allocation_sweep(bool prior_only) {
    for (int j = 0; j < m_; ++j) update_allocation_for(j, prior_only);
}

Eigen::VectorXd BarcmSampler::cluster_mu(int k) const {
    Eigen::VectorXd mu = clusters_[k].alpha;
    if (p_ > 0) mu.noalias() += block_.X() * clusters_[k].beta;
    return mu;
}

bool BarcmSampler::partition_valid() const {
    std::vector<int> counts(cluster_count(), 0);
    for (int j = 0; j < m_; ++j) {
        if (q_[j] < 0 || q_[j] >= cluster_count()) return false;
        ++counts[q_[j]];
    }
    for (int k = 0; k < cluster_count(); ++k) {
        if (counts[k] == 0 || counts[k] != clusters_[k].size) return false;
        if (clusters_[k].alpha.size() != n_ || clusters_[k].beta.size() != p_) return false;
    }
    return true;
}

bool BarcmSampler::consistent(double tol) const {
    for (int j = 0; j < m_; ++j)
        if (!latent_column_consistent(Z_.col(j), neighbors_[j], tol)) return false;
    return true;
}

void BarcmSampler::sweep() {
    // step 1: collapsed allocation moves
    allocation_sweep(false);
    // step 2a: latent scan under each ranker's cluster parameters
    std::vector<Eigen::VectorXd> mus(cluster_count());
    for (int k = 0; k < cluster_count(); ++k) mus[k] = cluster_mu(k);
    for (int j = 0; j < m_; ++j)
        gibbs_update_latent_column(Z_.col(j), mus[q_[j]], 1.0, neighbors_[j], ranker_rng_[j]);
    refresh_latent_summaries();
    // step 2b: single scale draw from the cluster-summed statistic
    if (cfg_.px_enabled) {
        double S = 0.0;
        for (const auto& c : clusters_) S += c.s_marg;
        last_theta_ = sample_theta(S, n_ * m_, main_rng_);
        Z_ /= last_theta_;
        for (int j = 0; j < m_; ++j) {
            vtz_[j] /= last_theta_;
            zznorm_[j] /= last_theta_ * last_theta_;
        }
        for (auto& c : clusters_) {
            c.zz /= last_theta_ * last_theta_;
            c.u /= last_theta_;
            c.s_marg = cluster_marginal(c.zz, c.u, c.size);
        }
    } else {
        last_theta_ = 1.0;
    }
    // step 2c: per-cluster parameter draws at multiplicity |A_k|
    for (auto& c : clusters_) {
        auto [alpha, beta] = sample_alpha_beta_from_summary(
            c.u, static_cast<double>(c.size), 1.0, block_, main_rng_);
        c.alpha = std::move(alpha);
        c.beta = std::move(beta);
    }
    ++sweep_count_;
    if (sweep_count_ % kConsistencyCheckEvery == 0) {
        if (!consistent())
            throw NumericalError("latent scores inconsistent with observed blocks after sweep " +
                                 std::to_string(sweep_count_));
        if (!partition_valid())
            throw NumericalError("cluster partition invalid after sweep " +
                                 std::to_string(sweep_count_));
    }
}

Eigen::VectorXd BarcmSampler::accumulated_aggregate_mean() const {
    if (aggregate_count_ == 0) return Eigen::VectorXd::Zero(n_);
    return aggregate_sum_ / aggregate_count_;
}

PosteriorDraws BarcmSampler::run() {
    const int stored = (cfg_.iterations - cfg_.burn_in + cfg_.thin - 1) / cfg_.thin;
    PosteriorDraws draws;
    draws.model = "barcm";
    draws.centered_mu.resize(stored, n_);
    draws.beta.resize(stored, p_);
    if (cfg_.px_enabled) draws.theta.resize(stored);
    draws.allocations.reserve(stored);
    if (cfg_.store_per_ranker) {
        draws.per_ranker_mu.resize(m_);
        for (int j = 0; j < m_; ++j) draws.per_ranker_mu[j].resize(stored, n_);
    }
    draws.chain_id = static_cast<int>(cfg_.stream_id);
    draws.iterations = cfg_.iterations;
    draws.burn_in = cfg_.burn_in;
    draws.thin = cfg_.thin;
    int row = 0;
    for (int it = 0; it < cfg_.iterations; ++it) {
        sweep();
        if (it < cfg_.burn_in || (it - cfg_.burn_in) % cfg_.thin != 0) continue;
        std::vector<Eigen::VectorXd> mus(cluster_count());
        for (int k = 0; k < cluster_count(); ++k) {
            mus[k] = cluster_mu(k);
            mus[k].array() -= mus[k].mean();
        }
        Eigen::VectorXd aggregate = Eigen::VectorXd::Zero(n_);
        Eigen::VectorXd beta_mean = Eigen::VectorXd::Zero(p_);
        for (int j = 0; j < m_; ++j) {
            aggregate += mus[q_[j]];
            beta_mean += clusters_[q_[j]].beta;
            if (cfg_.store_per_ranker) draws.per_ranker_mu[j].row(row) = mus[q_[j]].transpose();
        }
        aggregate /= m_;
        aggregate.array() -= aggregate.mean();
        beta_mean /= m_;
        draws.centered_mu.row(row) = aggregate.transpose();
        draws.beta.row(row) = beta_mean.transpose();
        if (cfg_.px_enabled) draws.theta[row] = last_theta_;
        draws.allocations.push_back(q_);
        aggregate_sum_ += aggregate;
        ++aggregate_count_;
        ++row;
    }
    assert(row == stored);
    return draws;
}

PosteriorDraws run_barcm(const std::vector<RankingList>& taus, const CovariateMatrix& X,
                         const DpConfig& cfg) {
    BarcmSampler sampler(taus, X, cfg);
    return sampler.run();
}

}  // namespace rankfuse
