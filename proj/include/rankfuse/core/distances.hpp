#ifndef RANKFUSE_CORE_DISTANCES_HPP
#define RANKFUSE_CORE_DISTANCES_HPP

#include <span>
#include <vector>

#include "rankfuse/core/types.hpp"

namespace rankfuse {

// Number of discordant pairs between two full rankings over the same n >= 2
// entities; divided by n(n-1)/2 when normalized.
double kendall_distance(const FullRanking& a, const FullRanking& b, bool normalized);

// Sum over entities of |pos_a(i) - pos_b(i)|; divided by floor(n^2/2) when
// normalized.
double footrule_distance(const FullRanking& a, const FullRanking& b, bool normalized);

// Fraction of the m(m-1)/2 unordered pairs on which two partitions agree
// (both together or both apart).
double rand_index(std::span<const int> labels_a, std::span<const int> labels_b);

}  // namespace rankfuse

#endif
