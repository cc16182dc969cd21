#include "rankfuse/core/distances.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace rankfuse {

namespace {

void check_same_n(const FullRanking& a, const FullRanking& b) {
    if (a.n() != b.n() || a.n() < 2)
        throw std::invalid_argument("rank distance: rankings must share the same n >= 2");
}

// inversion count by merge sort
std::uint64_t count_inversions(std::vector<int>& v, std::vector<int>& buf, int lo, int hi) {
    if (hi - lo <= 1) return 0;
    const int mid = (lo + hi) / 2;
    std::uint64_t inv = count_inversions(v, buf, lo, mid) + count_inversions(v, buf, mid, hi);
    int i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
            buf[k++] = v[i++];
        } else {
            inv += mid - i;
            buf[k++] = v[j++];
        }
    }
    while (i < mid) buf[k++] = v[i++];
    while (j < hi) buf[k++] = v[j++];
    for (int t = lo; t < hi; ++t) v[t] = buf[t];
    return inv;
}

}  // namespace

double kendall_distance(const FullRanking& a, const FullRanking& b, bool normalized) {
    check_same_n(a, b);
    const int n = a.n();
    // walk a's order and record b-positions; discordant pairs = inversions
    std::vector<int> seq(n);
    for (int k = 0; k < n; ++k) seq[k] = b.position_of(a.entity_at(k));
    std::vector<int> buf(n);
    const std::uint64_t inv = count_inversions(seq, buf, 0, n);
    const double denom = normalized ? 0.5 * n * (n - 1) : 1.0;
    return static_cast<double>(inv) / denom;
}

double footrule_distance(const FullRanking& a, const FullRanking& b, bool normalized) {
    check_same_n(a, b);
    const int n = a.n();
    std::uint64_t sum = 0;
    for (int i = 0; i < n; ++i) {
        const int d = a.position_of(i) - b.position_of(i);
        sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    const double denom = normalized ? static_cast<double>((n * n) / 2) : 1.0;
    return static_cast<double>(sum) / denom;
}

double rand_index(std::span<const int> labels_a, std::span<const int> labels_b) {
    const std::size_t m = labels_a.size();
    if (labels_b.size() != m || m < 2)
        throw std::invalid_argument("rand_index: label vectors must share length m >= 2");
    auto choose2 = [](std::uint64_t c) { return c * (c - 1) / 2; };
    std::unordered_map<int, std::uint64_t> ca, cb;
    std::map<std::pair<int, int>, std::uint64_t> cab;
    for (std::size_t t = 0; t < m; ++t) {
        ++ca[labels_a[t]];
        ++cb[labels_b[t]];
        ++cab[{labels_a[t], labels_b[t]}];
    }
    std::uint64_t sa = 0, sb = 0, sab = 0;
    for (const auto& [k, c] : ca) sa += choose2(c);
    for (const auto& [k, c] : cb) sb += choose2(c);
    for (const auto& [k, c] : cab) sab += choose2(c);
    const std::uint64_t total = choose2(m);
    // agreements = together-in-both + apart-in-both
    const std::uint64_t agree = total - sa - sb + 2 * sab;
    return static_cast<double>(agree) / static_cast<double>(total);
}

}  // namespace rankfuse
