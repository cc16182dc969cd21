#ifndef RANKFUSE_RANDOM_RNG_HPP
#define RANKFUSE_RANDOM_RNG_HPP

#include <cstdint>
#include <random>

namespace rankfuse {

// Seedable stream of draws. Two streams constructed with the same
// (seed, stream_id) pair produce identical sequences; distinct stream ids
// give independent streams, so per-ranker / per-chain / per-replication
// substreams can be consumed in parallel without changing results.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                          static_cast<std::uint32_t>(stream_id >> 32)};
        gen_.seed(seq);
    }

    // Deterministically derived child stream.
    RngStream substream(std::uint64_t child) const {
        return RngStream(seed_, mix(stream_id_, child));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return gen_(); }

    // U(0,1), both endpoints excluded (53-bit resolution plus half-ulp offset).
    double uniform() {
        return (gen_() >> 11) * (1.0 / 9007199254740992.0) + (1.0 / 18014398509481984.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() { return normal_(gen_); }
    double normal(double mean, double sd) { return mean + sd * normal_(gen_); }

    double chi_square(double dof) {
        std::chi_squared_distribution<double> dist(dof);
        return dist(gen_);
    }

    double exponential(double rate) {
        std::exponential_distribution<double> dist(rate);
        return dist(gen_);
    }

    // Uniform integer in [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
        return dist(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        // splitmix64 finalizer over the combined words
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rankfuse

#endif
