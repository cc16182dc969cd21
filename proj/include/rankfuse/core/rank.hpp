#ifndef RANKFUSE_CORE_RANK_HPP
#define RANKFUSE_CORE_RANK_HPP

#include <Eigen/Dense>

#include "rankfuse/core/types.hpp"

namespace rankfuse {

enum class TieRule {
    kForbidden,  // equal scores raise a ValidationError naming the pair
    kByIndex,    // equal scores break by ascending entity index
};

// Full ranking of scores in decreasing order: scores[order[k]] >= scores[order[k+1]].
FullRanking rank_of_scores(const Eigen::Ref<const Eigen::VectorXd>& scores,
                           TieRule tie_rule = TieRule::kByIndex);

// True iff every within-block preference of `partial` holds in `full`.
bool is_consistent(const RankingList& partial, const FullRanking& full);

}  // namespace rankfuse

#endif
