#ifndef RANKFUSE_IO_CSV_HPP
#define RANKFUSE_IO_CSV_HPP

#include <string>
#include <vector>

#include "rankfuse/core/types.hpp"

namespace rankfuse {

// Long-format rankings file: header `ranker_id,block_id,position,entity_id`,
// positions 1-based and contiguous within (ranker_id, block_id).
struct RawRankings {
    struct Row {
        std::string ranker_id;
        std::string block_id;
        int position;
        std::string entity_id;
    };
    std::vector<Row> rows;
    // entity ids in first-appearance order
    std::vector<std::string> entity_ids;
};

RawRankings read_rankings_csv(const std::string& path);

// Covariates file: header `entity_id,<name1>,...,<namep>`.
struct CovariatesFile {
    EntitySet entities;
    CovariateMatrix covariates;  // raw (not standardized)
};

CovariatesFile read_covariates_csv(const std::string& path);

// Resolves raw rows against an entity set; ranker order follows first
// appearance, blocks within a ranker follow first appearance of block_id.
std::vector<RankingList> assemble_rankings(const RawRankings& raw, const EntitySet& entities);

void write_rankings_csv(const std::string& path, const std::vector<RankingList>& lists,
                        const EntitySet& entities);

}  // namespace rankfuse

#endif
