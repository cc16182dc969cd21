#ifndef RANKFUSE_MODEL_BARCW_HPP
#define RANKFUSE_MODEL_BARCW_HPP

#include <Eigen/Dense>
#include <vector>

#include "rankfuse/core/types.hpp"
#include "rankfuse/model/config.hpp"
#include "rankfuse/model/design_block.hpp"
#include "rankfuse/model/draws.hpp"
#include "rankfuse/model/latent.hpp"
#include "rankfuse/random/rng.hpp"

namespace rankfuse {

// Per-ranker precision weights, restricted to the discrete prior support.
struct WeightState {
    Eigen::VectorXd w;
    std::vector<double> support{0.5, 1.0, 2.0};
};

// One conditional weight draw per ranker: mass proportional to
// w^{n/2} exp(-w/2 * rss_j) over the support, normalized in log space.
// rss_j = sum_i (Z_ij - mu_i)^2.
Eigen::VectorXd gibbs_update_weights(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                                     const Eigen::Ref<const Eigen::VectorXd>& mu,
                                     const std::vector<double>& support, RngStream& rng);

// Exact 3-point (or general-support) conditional probabilities for one ranker.
Eigen::VectorXd weight_conditional_probs(int n, double rss, const std::vector<double>& support);

class BarcwSampler {
public:
    BarcwSampler(std::vector<RankingList> taus, const CovariateMatrix& X,
                 const BarcConfig& cfg, std::vector<double> support = {0.5, 1.0, 2.0});

    PosteriorDraws run();
    void sweep();

    const Eigen::MatrixXd& Z() const { return Z_; }
    const Eigen::VectorXd& weights() const { return w_; }
    void set_state(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                   const Eigen::VectorXd& w);
    bool consistent(double tol = 1e-9) const;

private:
    std::vector<RankingList> taus_;
    BarcConfig cfg_;
    std::vector<double> support_;
    int n_, m_, p_;
    DesignBlock block_;
    std::vector<RankingNeighbors> neighbors_;
    Eigen::MatrixXd Z_;
    Eigen::VectorXd alpha_, beta_, w_;
    double last_theta_ = 1.0;
    RngStream main_rng_;
    std::vector<RngStream> ranker_rng_;
    int sweep_count_ = 0;
};

PosteriorDraws run_barcw(const std::vector<RankingList>& taus, const CovariateMatrix& X,
                         const BarcConfig& cfg,
                         const std::vector<double>& support = {0.5, 1.0, 2.0});

}  // namespace rankfuse

#endif
