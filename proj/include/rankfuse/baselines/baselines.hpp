#ifndef RANKFUSE_BASELINES_BASELINES_HPP
#define RANKFUSE_BASELINES_BASELINES_HPP

#include <Eigen/Dense>
#include <vector>

#include "rankfuse/core/types.hpp"

namespace rankfuse {

struct BordaResult {
    FullRanking ranking;
    Eigen::VectorXd mean_positions;    // 1-based means over lists ranking the entity
    std::vector<char> never_ranked;    // flagged entities placed last
};

// Mean observed position; entities ranked by no list go last (flagged),
// ties broken by entity index.
BordaResult borda(const std::vector<RankingList>& taus, int n);

enum class McVariant { MC1, MC2, MC3 };

struct TransitionMatrix {
    Eigen::MatrixXd P;  // row-stochastic
    double smoothing = 0.0;
};

// Markov-chain transition matrices from pairwise ranking information.
// From state i1:
//   MC1 - uniform over the multiset union, across lists ranking i1, of
//         entities placed at or above i1 in i1's block;
//   MC2 - pick a list ranking i1 uniformly, then uniform over that list's
//         entities at or above i1 (i1 included);
//   MC3 - pick a list ranking i1 uniformly, pick i2 uniformly from all of
//         that list's entities; move only if i2 sits above i1 in i1's block.
// Final P = (1-smoothing) P_raw + smoothing/n * ones.
TransitionMatrix build_mc_chain(const std::vector<RankingList>& taus, int n,
                                McVariant variant, double smoothing);

// Power iteration from the uniform vector until the successive L1 change
// drops below tol; the aggregated list sorts pi descending.
Eigen::VectorXd stationary_distribution(const TransitionMatrix& tm, double tol = 1e-10,
                                        int max_iters = 100000);

struct PlParams {
    Eigen::VectorXd gamma_pl;  // positive, sums to 1
};

// Minorize-maximization fit of the Plackett-Luce model; each block is one
// sequential-choice observation. Requires the beats-graph to be strongly
// connected, otherwise throws DegeneracyError naming a separating entity set.
PlParams fit_plackett_luce(const std::vector<RankingList>& taus, int n,
                           int max_iters = 2000, double tol = 1e-9);

// Exact sequential-choice probability of a full ranking.
double pl_probability(const FullRanking& tau, const PlParams& params);

// Log-likelihood of the lists under gamma (used to verify MM ascent).
double pl_log_likelihood(const std::vector<RankingList>& taus,
                         const Eigen::Ref<const Eigen::VectorXd>& gamma_pl);

}  // namespace rankfuse

#endif
