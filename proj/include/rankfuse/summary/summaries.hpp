#ifndef RANKFUSE_SUMMARY_SUMMARIES_HPP
#define RANKFUSE_SUMMARY_SUMMARIES_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rankfuse/core/types.hpp"
#include "rankfuse/model/draws.hpp"

namespace rankfuse {

struct RankInterval {
    int lower = 0;  // 1-based inclusive
    int upper = 0;
};

struct AggregationResult {
    FullRanking aggregated;
    Eigen::VectorXd posterior_mean_scores;  // centered
    std::vector<RankInterval> intervals;    // per entity, level as requested
    std::string method;
    int total_draws = 0;
    int chains = 1;
};

// Point list = rank of per-entity posterior means (ties by index), plus
// per-entity rank intervals at the given level.
AggregationResult aggregate_rank(const Eigen::Ref<const Eigen::MatrixXd>& score_draws,
                                 const std::string& method, double level = 0.95);

// Per entity, nearest-rank quantiles of its 1-based position across the
// per-draw rankings rank(mu^[l]).
std::vector<RankInterval> rank_intervals(const Eigen::Ref<const Eigen::MatrixXd>& score_draws,
                                         double level);

struct BetaSummary {
    std::vector<std::string> names;
    Eigen::VectorXd mean;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    double level = 0.95;

    int p() const { return static_cast<int>(mean.size()); }
};

// Posterior mean and central interval per coefficient; empty summary at p=0.
BetaSummary covariate_effect_summary(const Eigen::Ref<const Eigen::MatrixXd>& beta_draws,
                                     const std::vector<std::string>& names,
                                     double level = 0.95);

// Fraction of stored draws with q_j == q_k; symmetric, unit diagonal.
Eigen::MatrixXd coclustering_matrix(const std::vector<std::vector<int>>& allocations);

// Stored draw maximizing the average Rand index against all stored draws
// (computed exactly from the co-clustering matrix); returned as labels.
std::vector<int> consensus_partition(const std::vector<std::vector<int>>& allocations);

// Posterior distribution of the occupied-cluster count.
Eigen::VectorXd cluster_count_per_draw(const std::vector<std::vector<int>>& allocations);

struct RankerReport {
    Eigen::VectorXd mean_weights;           // BARCW; empty otherwise
    Eigen::MatrixXd coclustering;           // BARCM; empty otherwise
    std::vector<int> consensus;             // BARCM consensus partition
    Eigen::MatrixXd per_ranker_mean_mu;     // m x n mean centered scores (BARCM)
};

RankerReport build_ranker_report(const PosteriorDraws& draws);

// BARCM across-ranker aggregate score rows: mean over rankers per stored draw.
Eigen::MatrixXd barcm_aggregate_scores(const PosteriorDraws& draws);

}  // namespace rankfuse

#endif
