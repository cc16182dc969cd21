#include "rankfuse/baselines/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"

namespace rankfuse {

namespace {

// entity -> (block pointer, within-block position) per list; -1 when unranked
struct ListIndex {
    std::vector<int> block_of;
    std::vector<int> pos_in_block;

    static ListIndex build(const RankingList& tau, int n) {
        ListIndex idx;
        idx.block_of.assign(n, -1);
        idx.pos_in_block.assign(n, -1);
        for (int b = 0; b < static_cast<int>(tau.blocks.size()); ++b) {
            const auto& block = tau.blocks[b];
            for (int t = 0; t < static_cast<int>(block.size()); ++t) {
                idx.block_of[block[t]] = b;
                idx.pos_in_block[block[t]] = t;
            }
        }
        return idx;
    }
};

}  // namespace

BordaResult borda(const std::vector<RankingList>& taus, int n) {
    if (taus.empty()) throw std::invalid_argument("borda: need at least one list");
    Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(n);
    for (const auto& tau : taus) {
        tau.validate(n);
        for (const auto& block : tau.blocks) {
            for (int t = 0; t < static_cast<int>(block.size()); ++t) {
                sums[block[t]] += t + 1;  // 1-based observed position
                counts[block[t]] += 1;
            }
        }
    }
    BordaResult result;
    result.mean_positions.resize(n);
    result.never_ranked.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        if (counts[i] == 0) {
            result.never_ranked[i] = 1;
            result.mean_positions[i] = std::numeric_limits<double>::quiet_NaN();
        } else {
            result.mean_positions[i] = sums[i] / counts[i];
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const bool na = result.never_ranked[a], nb = result.never_ranked[b];
        if (na != nb) return nb;  // never-ranked entities last
        if (na && nb) return a < b;
        if (result.mean_positions[a] != result.mean_positions[b])
            return result.mean_positions[a] < result.mean_positions[b];
        return a < b;
    });
    result.ranking = FullRanking(std::move(order));
    return result;
}

TransitionMatrix build_mc_chain(const std::vector<RankingList>& taus, int n,
                                McVariant variant, double smoothing) {
    if (smoothing < 0.0 || smoothing >= 1.0)
        throw std::invalid_argument("build_mc_chain: smoothing must lie in [0,1)");
    std::vector<ListIndex> indices;
    indices.reserve(taus.size());
    std::vector<int> cover(n, 0);
    for (const auto& tau : taus) {
        tau.validate(n);
        indices.push_back(ListIndex::build(tau, n));
        for (const auto& block : tau.blocks)
            for (int i : block) ++cover[i];
    }
    for (int i = 0; i < n; ++i)
        if (cover[i] == 0)
            throw DegeneracyError("markov chain: entity " + std::to_string(i) +
                                  " appears in no list");

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int i1 = 0; i1 < n; ++i1) {
        // lists ranking i1
        std::vector<int> owners;
        for (int l = 0; l < static_cast<int>(taus.size()); ++l)
            if (indices[l].block_of[i1] >= 0) owners.push_back(l);
        const double per_list = 1.0 / owners.size();
        for (int l : owners) {
            const auto& idx = indices[l];
            const auto& block = taus[l].blocks[idx.block_of[i1]];
            const int pos = idx.pos_in_block[i1];
            switch (variant) {
                case McVariant::MC2: {
                    // uniform over entities at or above i1 in this list
                    const double w = per_list / (pos + 1);
                    for (int t = 0; t <= pos; ++t) P(i1, block[t]) += w;
                    break;
                }
                case McVariant::MC1: {
                    // handled below: MC1 pools the multiset across lists
                    break;
                }
                case McVariant::MC3: {
                    // uniform over the whole list; move only when strictly above
                    int total = taus[l].ranked_count();
                    const double w = per_list / total;
                    for (int t = 0; t < pos; ++t) P(i1, block[t]) += w;
                    P(i1, i1) += per_list * (1.0 - static_cast<double>(pos) / total);
                    break;
                }
            }
        }
        if (variant == McVariant::MC1) {
            // multiset union over owning lists of entities ranked at or above i1
            std::vector<int> multiset_counts(n, 0);
            int total = 0;
            for (int l : owners) {
                const auto& idx = indices[l];
                const auto& block = taus[l].blocks[idx.block_of[i1]];
                const int pos = idx.pos_in_block[i1];
                for (int t = 0; t <= pos; ++t) {
                    ++multiset_counts[block[t]];
                    ++total;
                }
            }
            for (int i2 = 0; i2 < n; ++i2)
                if (multiset_counts[i2] > 0)
                    P(i1, i2) = static_cast<double>(multiset_counts[i2]) / total;
        }
    }
    TransitionMatrix tm;
    tm.smoothing = smoothing;
    tm.P = (1.0 - smoothing) * P;
    tm.P.array() += smoothing / n;
    return tm;
}

Eigen::VectorXd stationary_distribution(const TransitionMatrix& tm, double tol, int max_iters) {
    const int n = static_cast<int>(tm.P.rows());
    Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd next = tm.P.transpose() * pi;
        next /= next.sum();
        const double change = (next - pi).lpNorm<1>();
        pi = next;
        if (change < tol) return pi;
    }
    throw NumericalError("stationary_distribution: power iteration did not converge");
}

double pl_log_likelihood(const std::vector<RankingList>& taus,
                         const Eigen::Ref<const Eigen::VectorXd>& gamma_pl) {
    double ll = 0.0;
    for (const auto& tau : taus) {
        for (const auto& block : tau.blocks) {
            double tail = 0.0;
            for (int i : block) tail += gamma_pl[i];
            for (std::size_t t = 0; t + 1 < block.size(); ++t) {
                ll += std::log(gamma_pl[block[t]]) - std::log(tail);
                tail -= gamma_pl[block[t]];
            }
        }
    }
    return ll;
}

namespace {

// Kosaraju strong-connectivity check on the "beats" digraph; returns an SCC
// with no incoming edges when the graph is not strongly connected.
std::vector<int> separating_set(const std::vector<std::vector<int>>& beats, int n) {
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> rev(n);
    for (int u = 0; u < n; ++u)
        for (int v : beats[u]) rev[v].push_back(u);
    // iterative DFS post-order on beats
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::pair<int, int>> stack{{s, 0}};
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < static_cast<int>(beats[u].size())) {
                const int v = beats[u][next++];
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back({v, 0});
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    // first component of the reverse graph in reverse post-order
    std::vector<char> mark(n, 0);
    std::vector<int> comp;
    std::vector<int> stack{order.back()};
    mark[order.back()] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (int v : rev[u])
            if (!mark[v]) {
                mark[v] = 1;
                stack.push_back(v);
            }
    }
    if (static_cast<int>(comp.size()) == n) return {};
    std::sort(comp.begin(), comp.end());
    return comp;
}

}  // namespace

PlParams fit_plackett_luce(const std::vector<RankingList>& taus, int n, int max_iters,
                           double tol) {
    std::vector<std::vector<int>> beats(n);
    for (const auto& tau : taus) {
        tau.validate(n);
        for (const auto& block : tau.blocks)
            for (std::size_t a = 0; a < block.size(); ++a)
                for (std::size_t b = a + 1; b < block.size(); ++b)
                    beats[block[a]].push_back(block[b]);
    }
    const std::vector<int> sep = separating_set(beats, n);
    if (!sep.empty()) {
        std::string ids;
        for (std::size_t t = 0; t < sep.size() && t < 8; ++t)
            ids += (t ? "," : "") + std::to_string(sep[t]);
        throw DegeneracyError(
            "plackett-luce: comparison graph not strongly connected; separating entity set {" +
            ids + "}");
    }

    Eigen::VectorXd gamma = Eigen::VectorXd::Constant(n, 1.0 / n);
    Eigen::VectorXd wins = Eigen::VectorXd::Zero(n);
    for (const auto& tau : taus)
        for (const auto& block : tau.blocks)
            for (std::size_t t = 0; t + 1 < block.size(); ++t) wins[block[t]] += 1.0;

    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd denom = Eigen::VectorXd::Zero(n);
        for (const auto& tau : taus) {
            for (const auto& block : tau.blocks) {
                if (block.size() < 2) continue;
                double tail = 0.0;
                for (int i : block) tail += gamma[i];
                // suffix sums of 1/Q over the stages each entity participates in
                double inv_acc = 0.0;
                for (std::size_t t = 0; t + 1 < block.size(); ++t) {
                    inv_acc += 1.0 / tail;
                    tail -= gamma[block[t]];
                    denom[block[t]] += inv_acc;
                }
                // the last entity participates in every stage
                denom[block.back()] += inv_acc;
            }
        }
        Eigen::VectorXd next(n);
        for (int i = 0; i < n; ++i) next[i] = wins[i] / denom[i];
        next /= next.sum();
        const double rel = ((next - gamma).array().abs() / gamma.array()).maxCoeff();
        gamma = next;
        if (rel < tol) break;
    }
    return PlParams{gamma};
}

double pl_probability(const FullRanking& tau, const PlParams& params) {
    const auto& g = params.gamma_pl;
    double prob = 1.0;
    double tail = g.sum();
    for (int t = 0; t + 1 < tau.n(); ++t) {
        const int i = tau.entity_at(t);
        prob *= g[i] / tail;
        tail -= g[i];
    }
    return prob;
}

}  // namespace rankfuse
