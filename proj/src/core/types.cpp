#include "rankfuse/core/types.hpp"

#include <cmath>

#include "rankfuse/errors.hpp"

namespace rankfuse {

EntitySet::EntitySet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) throw ValidationError("entity set must be non-empty");
    index_.reserve(ids_.size());
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) {
        auto [it, inserted] = index_.emplace(ids_[i], i);
        if (!inserted) throw ValidationError("duplicate entity id '" + ids_[i] + "'");
    }
}

int EntitySet::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

void RankingList::validate(int n) const {
    std::vector<char> seen(n, 0);
    for (const auto& block : blocks) {
        if (block.empty())
            throw ValidationError("ranker '" + ranker_id + "': empty block");
        for (int idx : block) {
            if (idx < 0 || idx >= n)
                throw ValidationError("ranker '" + ranker_id + "': entity index out of range");
            if (seen[idx])
                throw ValidationError("ranker '" + ranker_id + "': entity " +
                                      std::to_string(idx) + " appears twice");
            seen[idx] = 1;
        }
    }
}

FullRanking::FullRanking(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    positions_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        const int e = order_[k];
        if (e < 0 || e >= n || positions_[e] != -1)
            throw ValidationError("FullRanking: order is not a permutation");
        positions_[e] = k;
    }
}

void CovariateMatrix::validate() const {
    if (!values.allFinite()) throw ValidationError("covariates contain non-finite values");
}

CovariateMatrix CovariateMatrix::standardize() const {
    validate();
    CovariateMatrix out = *this;
    const int rows = n(), cols = p();
    out.column_means.resize(cols);
    out.column_sds.resize(cols);
    for (int j = 0; j < cols; ++j) {
        const double mean = values.col(j).mean();
        const double ss = (values.col(j).array() - mean).square().sum();
        const double sd = rows > 1 ? std::sqrt(ss / (rows - 1)) : 0.0;
        if (!(sd > 0.0)) {
            const std::string name = j < static_cast<int>(column_names.size())
                                         ? column_names[j] : std::to_string(j);
            throw ValidationError("covariate column '" + name + "' has zero variance");
        }
        out.values.col(j) = (values.col(j).array() - mean) / sd;
        out.column_means[j] = mean;
        out.column_sds[j] = sd;
    }
    out.standardized = true;
    return out;
}

}  // namespace rankfuse
