#include "rankfuse/model/draws.hpp"

#include <stdexcept>

namespace rankfuse {

PosteriorDraws pool_chains(const std::vector<PosteriorDraws>& chains) {
    if (chains.empty()) throw std::invalid_argument("pool_chains: no chains");
    if (chains.size() == 1) {
        PosteriorDraws out = chains.front();
        out.chain_sizes = {out.draw_count()};
        return out;
    }
    int total = 0;
    for (const auto& c : chains) total += c.draw_count();
    const auto& first = chains.front();
    PosteriorDraws out;
    out.model = first.model;
    out.iterations = first.iterations;
    out.burn_in = first.burn_in;
    out.thin = first.thin;
    out.warnings = first.warnings;
    out.centered_mu.resize(total, first.centered_mu.cols());
    out.beta.resize(total, first.beta.cols());
    const bool has_theta = first.theta.size() > 0;
    const bool has_weights = first.weights.size() > 0;
    const bool has_alloc = !first.allocations.empty();
    const std::size_t n_ranker = first.per_ranker_mu.size();
    if (has_theta) out.theta.resize(total);
    if (has_weights) out.weights.resize(total, first.weights.cols());
    if (has_alloc) out.allocations.reserve(total);
    out.per_ranker_mu.resize(n_ranker);
    for (std::size_t r = 0; r < n_ranker; ++r)
        out.per_ranker_mu[r].resize(total, first.per_ranker_mu[r].cols());
    int row = 0;
    for (const auto& c : chains) {
        if (c.model != first.model || c.centered_mu.cols() != first.centered_mu.cols())
            throw std::invalid_argument("pool_chains: chains disagree in shape");
        const int L = c.draw_count();
        out.centered_mu.middleRows(row, L) = c.centered_mu;
        out.beta.middleRows(row, L) = c.beta;
        if (has_theta) out.theta.segment(row, L) = c.theta;
        if (has_weights) out.weights.middleRows(row, L) = c.weights;
        if (has_alloc)
            out.allocations.insert(out.allocations.end(), c.allocations.begin(),
                                   c.allocations.end());
        for (std::size_t r = 0; r < n_ranker; ++r)
            out.per_ranker_mu[r].middleRows(row, L) = c.per_ranker_mu[r];
        out.chain_sizes.push_back(L);
        row += L;
    }
    return out;
}

}  // namespace rankfuse
