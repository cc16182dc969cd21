#ifndef RANKFUSE_RANDOM_TRUNCATED_NORMAL_HPP
#define RANKFUSE_RANDOM_TRUNCATED_NORMAL_HPP

#include "rankfuse/random/rng.hpp"

namespace rankfuse {

// Exact draw from N(mean, sd^2) conditioned on the open interval
// (lower, upper); either bound may be infinite. The result is strictly
// inside the interval.
//
// Central intervals use inversion of the normal CDF; intervals lying
// entirely beyond ~4 sd from the mean switch to a translated-exponential
// rejection sampler (Robert 1995), which stays exact where inversion
// loses precision.
double sample_truncated_normal(double mean, double sd, double lower, double upper,
                               RngStream& rng);

}  // namespace rankfuse

#endif
