#ifndef RANKFUSE_RANDOM_NORMAL_HPP
#define RANKFUSE_RANDOM_NORMAL_HPP

namespace rankfuse {

// Standard normal CDF.
double std_normal_cdf(double x);

// Inverse standard normal CDF (Wichura's AS 241, double precision).
// p must lie in (0, 1).
double std_normal_quantile(double p);

// Standard normal density.
double std_normal_pdf(double x);

}  // namespace rankfuse

#endif
