#include "rankfuse/core/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rankfuse/errors.hpp"

namespace rankfuse {

FullRanking rank_of_scores(const Eigen::Ref<const Eigen::VectorXd>& scores, TieRule tie_rule) {
    const int n = static_cast<int>(scores.size());
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(scores[i]))
            throw std::invalid_argument("rank_of_scores: non-finite score");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    if (tie_rule == TieRule::kForbidden) {
        for (int k = 0; k + 1 < n; ++k) {
            if (scores[order[k]] == scores[order[k + 1]])
                throw ValidationError("tie between entities " + std::to_string(order[k]) +
                                      " and " + std::to_string(order[k + 1]));
        }
    }
    return FullRanking(std::move(order));
}

bool is_consistent(const RankingList& partial, const FullRanking& full) {
    // within a block the order is total, so adjacent agreement suffices
    for (const auto& block : partial.blocks) {
        for (std::size_t t = 0; t + 1 < block.size(); ++t) {
            if (full.position_of(block[t]) >= full.position_of(block[t + 1])) return false;
        }
    }
    return true;
}

}  // namespace rankfuse
