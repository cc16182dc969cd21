#include "rankfuse/random/truncated_normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rankfuse/random/normal.hpp"

namespace rankfuse {

namespace {

constexpr double kTailThreshold = 4.0;

// Rejection sampler for the standard normal restricted to [a, b], a >= 0,
// with a translated exponential proposal of rate lambda = (a+sqrt(a^2+4))/2.
double tail_rejection(double a, double b, RngStream& rng) {
    const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
    const bool bounded = std::isfinite(b);
    // acceptance ratio is maximized at x* = clamp(lambda, a, b)
    const double xstar = bounded && lambda > b ? b : lambda;
    const double log_at_star = -0.5 * xstar * xstar + lambda * xstar;
    const double span = bounded ? -std::expm1(-lambda * (b - a)) : 1.0;
    for (;;) {
        double x;
        if (bounded) {
            x = a - std::log1p(-rng.uniform() * span) / lambda;
        } else {
            x = a - std::log(rng.uniform()) / lambda;
        }
        const double log_acc = -0.5 * x * x + lambda * x - log_at_star;
        if (std::log(rng.uniform()) <= log_acc) return x;
    }
}

double clamp_open(double x, double lo, double hi) {
    if (x <= lo) x = std::nextafter(lo, std::numeric_limits<double>::infinity());
    if (x >= hi) x = std::nextafter(hi, -std::numeric_limits<double>::infinity());
    return x;
}

}  // namespace

double sample_truncated_normal(double mean, double sd, double lower, double upper,
                               RngStream& rng) {
    if (!(sd > 0.0)) throw std::invalid_argument("sample_truncated_normal: sd must be > 0");
    if (!(lower < upper))
        throw std::invalid_argument("sample_truncated_normal: empty interval (lower >= upper)");

    const double a = (lower - mean) / sd;
    const double b = (upper - mean) / sd;

    double z;
    if (a >= kTailThreshold) {
        z = tail_rejection(a, b, rng);
    } else if (b <= -kTailThreshold) {
        z = -tail_rejection(-b, -a, rng);
    } else {
        const double pa = std::isinf(a) ? 0.0 : std_normal_cdf(a);
        const double pb = std::isinf(b) ? 1.0 : std_normal_cdf(b);
        const double u = pa + (pb - pa) * rng.uniform();
        z = std_normal_quantile(u);
    }
    z = clamp_open(z, a, b);
    return clamp_open(mean + sd * z, lower, upper);
}

}  // namespace rankfuse
