#include "rankfuse/model/latent.hpp"

#include <limits>

#include "rankfuse/random/truncated_normal.hpp"

namespace rankfuse {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntervalFloor = 1e-12;
}  // namespace

RankingNeighbors RankingNeighbors::build(const RankingList& tau, int n) {
    RankingNeighbors nb;
    nb.above.assign(n, -1);
    nb.below.assign(n, -1);
    nb.ranked.assign(n, 0);
    for (const auto& block : tau.blocks) {
        for (std::size_t t = 0; t < block.size(); ++t) {
            const int i = block[t];
            nb.ranked[i] = 1;
            if (t > 0) nb.above[i] = block[t - 1];
            if (t + 1 < block.size()) nb.below[i] = block[t + 1];
        }
    }
    return nb;
}

void gibbs_update_latent_column(Eigen::Ref<Eigen::VectorXd> z,
                                const Eigen::Ref<const Eigen::VectorXd>& mu, double sd,
                                const RankingNeighbors& nb, RngStream& rng) {
    const int n = static_cast<int>(z.size());
    for (int i = 0; i < n; ++i) {
        if (!nb.ranked[i]) {
            z[i] = rng.normal(mu[i], sd);
            continue;
        }
        double lower = nb.below[i] >= 0 ? z[nb.below[i]] : -kInf;
        double upper = nb.above[i] >= 0 ? z[nb.above[i]] : kInf;
        if (upper - lower < kIntervalFloor) {
            const double pad = 0.5 * (kIntervalFloor - (upper - lower));
            lower -= pad;
            upper += pad;
        }
        z[i] = sample_truncated_normal(mu[i], sd, lower, upper, rng);
    }
}

bool latent_column_consistent(const Eigen::Ref<const Eigen::VectorXd>& z,
                              const RankingNeighbors& nb, double tol) {
    for (int i = 0; i < static_cast<int>(z.size()); ++i) {
        if (nb.above[i] >= 0 && z[i] > z[nb.above[i]] + tol) return false;
        if (nb.below[i] >= 0 && z[i] < z[nb.below[i]] - tol) return false;
    }
    return true;
}

void init_latent_column(Eigen::Ref<Eigen::VectorXd> z, const RankingList& tau) {
    z.setZero();
    for (const auto& block : tau.blocks) {
        const int len = static_cast<int>(block.size());
        for (int t = 0; t < len; ++t) {
            z[block[t]] = len == 1 ? 0.0 : 2.0 - 4.0 * t / (len - 1);
        }
    }
}

}  // namespace rankfuse
