#include "rankfuse/summary/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"

namespace rankfuse {

namespace {

// nearest-rank quantile: x_(ceil(p*L)) on a sorted copy
template <typename Vec>
double quantile_nearest_rank(Vec sorted, double p) {
    const int L = static_cast<int>(sorted.size());
    int idx = static_cast<int>(std::ceil(p * L));
    idx = std::max(1, std::min(L, idx));
    return sorted[idx - 1];
}

}  // namespace

std::vector<RankInterval> rank_intervals(const Eigen::Ref<const Eigen::MatrixXd>& score_draws,
                                         double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("rank_intervals: level must lie in (0,1)");
    const int L = static_cast<int>(score_draws.rows());
    const int n = static_cast<int>(score_draws.cols());
    if (L < 1) throw std::invalid_argument("rank_intervals: no draws");
    // positions of every entity across per-draw rankings
    Eigen::MatrixXi positions(L, n);
    for (int l = 0; l < L; ++l) {
        const FullRanking r = rank_of_scores(score_draws.row(l).transpose());
        for (int i = 0; i < n; ++i) positions(l, i) = r.position_of(i) + 1;
    }
    const double alpha = 1.0 - level;
    std::vector<RankInterval> intervals(n);
    std::vector<double> column(L);
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < L; ++l) column[l] = positions(l, i);
        std::sort(column.begin(), column.end());
        intervals[i].lower = static_cast<int>(quantile_nearest_rank(column, alpha / 2));
        intervals[i].upper = static_cast<int>(quantile_nearest_rank(column, 1.0 - alpha / 2));
    }
    return intervals;
}

AggregationResult aggregate_rank(const Eigen::Ref<const Eigen::MatrixXd>& score_draws,
                                 const std::string& method, double level) {
    if (score_draws.rows() < 1) throw std::invalid_argument("aggregate_rank: empty draws");
    AggregationResult result;
    result.posterior_mean_scores = score_draws.colwise().mean().transpose();
    result.aggregated = rank_of_scores(result.posterior_mean_scores);
    result.intervals = rank_intervals(score_draws, level);
    result.method = method;
    result.total_draws = static_cast<int>(score_draws.rows());
    return result;
}

BetaSummary covariate_effect_summary(const Eigen::Ref<const Eigen::MatrixXd>& beta_draws,
                                     const std::vector<std::string>& names, double level) {
    const int p = static_cast<int>(beta_draws.cols());
    BetaSummary summary;
    summary.level = level;
    summary.mean.resize(p);
    summary.lower.resize(p);
    summary.upper.resize(p);
    summary.names = names;
    if (p == 0) return summary;
    if (static_cast<int>(names.size()) != p)
        throw std::invalid_argument("covariate_effect_summary: names must match p");
    const double alpha = 1.0 - level;
    std::vector<double> column(beta_draws.rows());
    for (int k = 0; k < p; ++k) {
        summary.mean[k] = beta_draws.col(k).mean();
        for (int l = 0; l < beta_draws.rows(); ++l) column[l] = beta_draws(l, k);
        std::sort(column.begin(), column.end());
        summary.lower[k] = quantile_nearest_rank(column, alpha / 2);
        summary.upper[k] = quantile_nearest_rank(column, 1.0 - alpha / 2);
    }
    return summary;
}

Eigen::MatrixXd coclustering_matrix(const std::vector<std::vector<int>>& allocations) {
    if (allocations.empty()) return Eigen::MatrixXd();
    const int m = static_cast<int>(allocations.front().size());
    Eigen::MatrixXd co = Eigen::MatrixXd::Zero(m, m);
    for (const auto& q : allocations) {
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b)
                if (q[a] == q[b]) {
                    co(a, b) += 1.0;
                    if (a != b) co(b, a) += 1.0;
                }
    }
    co /= static_cast<double>(allocations.size());
    return co;
}

std::vector<int> consensus_partition(const std::vector<std::vector<int>>& allocations) {
    if (allocations.empty()) return {};
    const Eigen::MatrixXd co = coclustering_matrix(allocations);
    const int m = static_cast<int>(co.rows());
    // average Rand index of a candidate draw against all draws depends only
    // on the co-clustering frequencies
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t l = 0; l < allocations.size(); ++l) {
        const auto& q = allocations[l];
        double score = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                score += q[a] == q[b] ? co(a, b) : 1.0 - co(a, b);
        if (score > best) {
            best = score;
            best_idx = l;
        }
    }
    return allocations[best_idx];
}

Eigen::VectorXd cluster_count_per_draw(const std::vector<std::vector<int>>& allocations) {
    Eigen::VectorXd counts(allocations.size());
    for (std::size_t l = 0; l < allocations.size(); ++l) {
        std::vector<int> sorted = allocations[l];
        std::sort(sorted.begin(), sorted.end());
        counts[l] = static_cast<double>(
            std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    }
    return counts;
}

RankerReport build_ranker_report(const PosteriorDraws& draws) {
    RankerReport report;
    if (draws.weights.size() > 0)
        report.mean_weights = draws.weights.colwise().mean().transpose();
    if (!draws.allocations.empty()) {
        report.coclustering = coclustering_matrix(draws.allocations);
        report.consensus = consensus_partition(draws.allocations);
    }
    if (!draws.per_ranker_mu.empty()) {
        const int m = static_cast<int>(draws.per_ranker_mu.size());
        const int n = static_cast<int>(draws.per_ranker_mu.front().cols());
        report.per_ranker_mean_mu.resize(m, n);
        for (int j = 0; j < m; ++j)
            report.per_ranker_mean_mu.row(j) = draws.per_ranker_mu[j].colwise().mean();
    }
    return report;
}

Eigen::MatrixXd barcm_aggregate_scores(const PosteriorDraws& draws) {
    if (draws.per_ranker_mu.empty())
        throw ValidationError("barcm_aggregate_scores: per-ranker draws not stored");
    const int L = static_cast<int>(draws.per_ranker_mu.front().rows());
    const int n = static_cast<int>(draws.per_ranker_mu.front().cols());
    Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(L, n);
    for (const auto& mu : draws.per_ranker_mu) agg += mu;
    agg /= static_cast<double>(draws.per_ranker_mu.size());
    return agg;
}

}  // namespace rankfuse
