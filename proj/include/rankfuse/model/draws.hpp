#ifndef RANKFUSE_MODEL_DRAWS_HPP
#define RANKFUSE_MODEL_DRAWS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rankfuse {

// Stored chain of posterior draws. Rows index stored iterations.
// centered_mu rows are mu - mu_bar (they sum to zero); under BARCM they hold
// the across-ranker average m^{-1} sum_j mu^{(j)} - centered, with the
// per-ranker paths kept in per_ranker_mu.
struct PosteriorDraws {
    std::string model;
    Eigen::MatrixXd centered_mu;              // L x n
    Eigen::MatrixXd beta;                     // L x p
    Eigen::VectorXd theta;                    // L (PX chains only, else empty)
    Eigen::MatrixXd weights;                  // L x m (BARCW)
    std::vector<std::vector<int>> allocations;  // L rows of m labels (BARCM)
    std::vector<Eigen::MatrixXd> per_ranker_mu; // m matrices, each L x n (BARCM)

    int chain_id = 0;
    int iterations = 0;
    int burn_in = 0;
    int thin = 1;
    std::vector<int> chain_sizes;  // stored draws per chain after pooling
    std::vector<std::string> warnings;

    int draw_count() const { return static_cast<int>(centered_mu.rows()); }
    int n() const { return static_cast<int>(centered_mu.cols()); }
};

// Concatenates stored draws of several chains (same model/shape).
PosteriorDraws pool_chains(const std::vector<PosteriorDraws>& chains);

}  // namespace rankfuse

#endif
