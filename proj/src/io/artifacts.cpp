#include "rankfuse/io/artifacts.hpp"

#include <fstream>
#include <json.hpp>

#include "rankfuse/errors.hpp"

namespace rankfuse {

using nlohmann::json;

namespace {

json interval_json(const RankInterval& iv) { return json::array({iv.lower, iv.upper}); }

void dump(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

json diagnostics_json(const DiagnosticsReport& report) {
    json scalars = json::array();
    for (const auto& d : report.scalars) {
        scalars.push_back(json{{"name", d.name},
                               {"ess", d.ess},
                               {"ess_per_1000", d.ess_per_1000},
                               {"per_chain_ess", d.per_chain_ess},
                               {"mcse", d.mcse},
                               {"acf", d.acf},
                               {"trace", d.trace},
                               {"constant", d.constant}});
    }
    return json{{"chains", report.chains},
                {"draws_per_chain", report.draws_per_chain},
                {"scalars", scalars}};
}

}  // namespace

void write_result_json(const std::string& path, const EntitySet& entities,
                       const AggregationResult& result, const BetaSummary& beta,
                       const RankerReport& rankers, const DiagnosticsReport& diagnostics) {
    json j;
    json order = json::array();
    for (int k = 0; k < result.aggregated.n(); ++k)
        order.push_back(entities.id(result.aggregated.entity_at(k)));
    j["aggregated_order"] = order;
    json scores = json::object();
    for (int i = 0; i < entities.n(); ++i)
        scores[entities.id(i)] = result.posterior_mean_scores[i];
    j["mean_scores"] = scores;
    json intervals = json::object();
    for (int i = 0; i < entities.n(); ++i) {
        if (i < static_cast<int>(result.intervals.size()))
            intervals[entities.id(i)] = interval_json(result.intervals[i]);
    }
    j["rank_intervals"] = intervals;
    j["method"] = result.method;
    j["total_draws"] = result.total_draws;
    j["chains"] = result.chains;

    json beta_summary = json::array();
    for (int k = 0; k < beta.p(); ++k) {
        beta_summary.push_back(json{{"name", beta.names[k]},
                                    {"mean", beta.mean[k]},
                                    {"lower", beta.lower[k]},
                                    {"upper", beta.upper[k]}});
    }
    j["beta_summary"] = beta_summary;

    json weights = json::array();
    for (int r = 0; r < rankers.mean_weights.size(); ++r)
        weights.push_back(rankers.mean_weights[r]);
    j["weights_summary"] = weights;

    json coclust = json::array();
    for (int a = 0; a < rankers.coclustering.rows(); ++a) {
        json row = json::array();
        for (int b = 0; b < rankers.coclustering.cols(); ++b)
            row.push_back(rankers.coclustering(a, b));
        coclust.push_back(row);
    }
    j["coclustering"] = coclust;
    if (!rankers.consensus.empty()) j["consensus_partition"] = rankers.consensus;

    j["diagnostics"] = diagnostics_json(diagnostics);
    dump(path, j);
}

void write_aggregate_csv(const std::string& path, const EntitySet& entities,
                         const AggregationResult& result) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << "entity,score,rank\n";
    out.precision(17);
    for (int k = 0; k < result.aggregated.n(); ++k) {
        const int e = result.aggregated.entity_at(k);
        out << entities.id(e) << ',' << result.posterior_mean_scores[e] << ',' << k + 1 << '\n';
    }
}

void write_diagnostics_json(const std::string& path, const DiagnosticsReport& report) {
    dump(path, diagnostics_json(report));
}

void write_draws(const std::string& base_path, const DrawsStore& store) {
    const std::string bin_path = base_path + ".bin";
    const std::string meta_path = base_path + ".json";
    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw ParseError("cannot open '" + bin_path + "' for writing");
    const Eigen::Index rows = store.values.rows(), cols = store.values.cols();
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double v = store.values(r, c);
            bin.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    }
    json meta{{"format", "rankfuse-draws"},
              {"version", 1},
              {"layout", "column-major"},
              {"draws", rows},
              {"scalars", store.scalar_names},
              {"chain_sizes", store.chain_sizes}};
    dump(meta_path, meta);
}

DrawsStore read_draws(const std::string& base_path) {
    const std::string bin_path = base_path + ".bin";
    const std::string meta_path = base_path + ".json";
    std::ifstream meta_in(meta_path);
    if (!meta_in) throw ParseError("cannot open draws sidecar '" + meta_path + "'");
    json meta;
    try {
        meta_in >> meta;
    } catch (const json::exception& e) {
        throw ParseError("draws sidecar '" + meta_path + "': " + e.what());
    }
    DrawsStore store;
    try {
        store.scalar_names = meta.at("scalars").get<std::vector<std::string>>();
        store.chain_sizes = meta.at("chain_sizes").get<std::vector<int>>();
        const int rows = meta.at("draws").get<int>();
        store.values.resize(rows, static_cast<int>(store.scalar_names.size()));
    } catch (const json::exception& e) {
        throw ParseError("draws sidecar '" + meta_path + "': " + e.what());
    }
    std::ifstream bin(bin_path, std::ios::binary);
    if (!bin) throw ParseError("cannot open draws file '" + bin_path + "'");
    for (Eigen::Index c = 0; c < store.values.cols(); ++c) {
        for (Eigen::Index r = 0; r < store.values.rows(); ++r) {
            double v;
            if (!bin.read(reinterpret_cast<char*>(&v), sizeof(double)))
                throw ParseError("draws file '" + bin_path + "' truncated");
            store.values(r, c) = v;
        }
    }
    return store;
}

}  // namespace rankfuse
