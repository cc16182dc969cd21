#ifndef RANKFUSE_CORE_TYPES_HPP
#define RANKFUSE_CORE_TYPES_HPP

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <vector>

namespace rankfuse {

// The set of ranked entities. Ids are unique, order defines entity indices.
class EntitySet {
public:
    EntitySet() = default;
    explicit EntitySet(std::vector<std::string> ids);

    int n() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int i) const { return ids_[i]; }
    // -1 when unknown
    int index_of(const std::string& id) const;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
};

// One ranker's preference data: ordered blocks over disjoint entity groups.
// Each block is a strict order (best first); blocks carry no cross-block
// relations. A list is full iff it has a single block covering all entities.
struct RankingList {
    std::string ranker_id;
    std::vector<std::vector<int>> blocks;

    // Validates against an entity count: indices in range, no duplicates,
    // no empty blocks. Throws ValidationError.
    void validate(int n) const;

    bool is_full(int n) const {
        return blocks.size() == 1 && static_cast<int>(blocks[0].size()) == n;
    }

    int ranked_count() const {
        int c = 0;
        for (const auto& b : blocks) c += static_cast<int>(b.size());
        return c;
    }
};

// A total order: order[k] = entity at position k (0-based internally),
// positions[i] = position of entity i. Mutual inverses by construction.
class FullRanking {
public:
    FullRanking() = default;
    explicit FullRanking(std::vector<int> order);

    int n() const { return static_cast<int>(order_.size()); }
    const std::vector<int>& order() const { return order_; }
    const std::vector<int>& positions() const { return positions_; }
    int position_of(int entity) const { return positions_[entity]; }
    int entity_at(int pos) const { return order_[pos]; }

private:
    std::vector<int> order_;
    std::vector<int> positions_;
};

// n x p entity covariates with optional column standardization.
struct CovariateMatrix {
    Eigen::MatrixXd values;  // n x p
    std::vector<std::string> column_names;
    bool standardized = false;
    Eigen::VectorXd column_means;  // populated when standardized
    Eigen::VectorXd column_sds;

    int n() const { return static_cast<int>(values.rows()); }
    int p() const { return static_cast<int>(values.cols()); }

    static CovariateMatrix empty(int n) {
        CovariateMatrix c;
        c.values.resize(n, 0);
        return c;
    }

    // Columns centered to sample mean 0 and scaled to sample sd 1.
    // Requires every raw column sd > 0; throws ValidationError otherwise.
    CovariateMatrix standardize() const;

    // Throws ValidationError on non-finite values.
    void validate() const;
};

}  // namespace rankfuse

#endif
