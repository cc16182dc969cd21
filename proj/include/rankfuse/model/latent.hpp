#ifndef RANKFUSE_MODEL_LATENT_HPP
#define RANKFUSE_MODEL_LATENT_HPP

#include <Eigen/Dense>
#include <vector>

#include "rankfuse/core/types.hpp"
#include "rankfuse/random/rng.hpp"

namespace rankfuse {

// Per-ranker truncation structure derived from the observed blocks:
// above[i]/below[i] are the entities immediately better/worse than i inside
// its block (-1 at block ends or for unranked entities).
struct RankingNeighbors {
    std::vector<int> above;
    std::vector<int> below;
    std::vector<char> ranked;

    static RankingNeighbors build(const RankingList& tau, int n);
};

// One Gibbs scan over the latent column z (entity index order): each entry is
// redrawn from N(mu_i, sd^2) truncated to (z[below], z[above]); unranked
// entities are drawn untruncated. Intervals narrower than 1e-12 are widened
// symmetrically to that floor before sampling.
void gibbs_update_latent_column(Eigen::Ref<Eigen::VectorXd> z,
                                const Eigen::Ref<const Eigen::VectorXd>& mu, double sd,
                                const RankingNeighbors& nb, RngStream& rng);

// Latent column respects the block orders (with slack for the interval floor).
bool latent_column_consistent(const Eigen::Ref<const Eigen::VectorXd>& z,
                              const RankingNeighbors& nb, double tol = 1e-9);

// Initial latent column: ranked entities equally spaced on [-2, 2] descending
// in observed order (per block); unranked entities at 0.
void init_latent_column(Eigen::Ref<Eigen::VectorXd> z, const RankingList& tau);

}  // namespace rankfuse

#endif
