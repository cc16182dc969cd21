#ifndef RANKFUSE_SIM_SCENARIOS_HPP
#define RANKFUSE_SIM_SCENARIOS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rankfuse/core/types.hpp"
#include "rankfuse/random/rng.hpp"

namespace rankfuse {

// Synthetic-experiment configuration. Scenario presets:
//   1: mu = x'beta,            beta = (3,2,1,0.5), p = 4, rho = 0.2
//   2: mu = x'beta + |x|^2,    beta = (3,2,1),     p = 3, rho = 0.5
//   3: mu = |x|^2,             p = 4, rho = 0.5
// Covariate rows are i.i.d. N(0, Sigma) with Sigma_st = rho^|s-t|.
struct ScenarioSpec {
    int scenario = 1;  // 1|2|3, or 0 for custom
    int n = 50;
    int m = 10;
    int p = 4;
    double rho = 0.2;
    double sigma = 5.0;
    Eigen::VectorXd beta_true;
    int block_count = 1;
    int replications = 100;
    std::uint64_t seed = 1;
    int iterations = 5000;
    int burn_in = 1000;

    static ScenarioSpec preset(int scenario);
    void validate() const;
};

struct ScenarioData {
    Eigen::MatrixXd X;
    Eigen::VectorXd mu_true;
    std::vector<RankingList> taus;
    std::vector<std::vector<int>> blocks;  // the shared random division (size block_count)
};

ScenarioData generate_scenario(const ScenarioSpec& spec, RngStream& rng);

// Fraction of all C(n,2) pairwise relations observed in one partial list made
// of `k` equal blocks: k*C(n/k,2)/C(n,2).
double pairwise_coverage(int n, int k);

}  // namespace rankfuse

#endif
