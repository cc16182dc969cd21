#ifndef RANKFUSE_MODEL_CONFIG_HPP
#define RANKFUSE_MODEL_CONFIG_HPP

#include <cstdint>
#include <optional>

namespace rankfuse {

struct BarcConfig {
    double sigma_alpha = 1.0;
    double sigma_beta = 100.0;
    int iterations = 5000;
    int burn_in = 1000;
    int thin = 1;
    bool px_enabled = true;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;  // distinguishes chains
    // testing hook: skip the scale draw and use this theta instead
    std::optional<double> fixed_theta;

    // Throws ValidationError on inconsistent settings.
    void validate() const;
};

struct DpConfig : BarcConfig {
    double gamma = 1.0;
    bool store_per_ranker = true;

    void validate() const;
};

}  // namespace rankfuse

#endif
