#ifndef RANKFUSE_IO_ARTIFACTS_HPP
#define RANKFUSE_IO_ARTIFACTS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rankfuse/core/types.hpp"
#include "rankfuse/summary/diagnostics.hpp"
#include "rankfuse/summary/summaries.hpp"

namespace rankfuse {

// result.json: aggregated_order, mean_scores, rank_intervals (1-based
// inclusive), beta_summary, weights_summary, coclustering, diagnostics.
void write_result_json(const std::string& path, const EntitySet& entities,
                       const AggregationResult& result, const BetaSummary& beta,
                       const RankerReport& rankers, const DiagnosticsReport& diagnostics);

// aggregate.csv: entity, score, rank columns for the chosen method.
void write_aggregate_csv(const std::string& path, const EntitySet& entities,
                         const AggregationResult& result);

void write_diagnostics_json(const std::string& path, const DiagnosticsReport& report);

// Columnar chain export: little-endian doubles, one column per scalar, chains
// concatenated row-wise, with a JSON sidecar describing the layout.
struct DrawsStore {
    std::vector<std::string> scalar_names;
    Eigen::MatrixXd values;       // total draws x scalars
    std::vector<int> chain_sizes;
};

void write_draws(const std::string& base_path, const DrawsStore& store);
DrawsStore read_draws(const std::string& base_path);

}  // namespace rankfuse

#endif
