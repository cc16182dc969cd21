// rankfuse: rank aggregation with entity covariates.
//
// Subcommands:
//   aggregate  - fit a model / baseline on rankings (+ covariates) and write
//                result.json, aggregate.csv, diagnostics.json
//   simulate   - run a synthetic experiment from a JSON spec file
//   diagnose   - recompute chain diagnostics from an exported draws file
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 model degeneracy.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "rankfuse/baselines/baselines.hpp"
#include "rankfuse/core/distances.hpp"
#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"
#include "rankfuse/io/artifacts.hpp"
#include "rankfuse/io/csv.hpp"
#include "rankfuse/model/barc.hpp"
#include "rankfuse/model/barcm.hpp"
#include "rankfuse/model/barcw.hpp"
#include "rankfuse/parallel.hpp"
#include "rankfuse/sim/experiments.hpp"
#include "rankfuse/summary/diagnostics.hpp"
#include "rankfuse/summary/summaries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rankfuse;

namespace {

struct AggregateOptions {
    std::string model = "barcw";
    std::string rankings_path;
    std::string covariates_path;
    int iterations = 5000;
    int burn_in = 1000;
    int thin = 1;
    int chains = 4;
    std::uint64_t seed = 0;
    double sigma_alpha = 1.0;
    double sigma_beta = 100.0;
    double gamma = 1.0;
    bool gamma_given = false;
    bool no_standardize = false;
    bool no_px = false;
    bool keep_draws = false;
    std::string out_dir = ".";
    int threads = 0;
    bool json_out = false;
};

int effective_threads(int flag_value) {
    return flag_value > 0 ? flag_value : default_thread_count();
}

struct LoadedData {
    EntitySet entities;
    std::vector<RankingList> lists;
    CovariateMatrix covariates;  // standardized unless disabled; p=0 without a file
};

LoadedData load_inputs(const AggregateOptions& opt) {
    const RawRankings raw = read_rankings_csv(opt.rankings_path);
    LoadedData data;
    if (!opt.covariates_path.empty()) {
        CovariatesFile cov = read_covariates_csv(opt.covariates_path);
        data.entities = cov.entities;
        data.covariates = opt.no_standardize ? cov.covariates : cov.covariates.standardize();
    } else {
        data.entities = EntitySet(raw.entity_ids);
        data.covariates = CovariateMatrix::empty(data.entities.n());
    }
    data.lists = assemble_rankings(raw, data.entities);
    return data;
}

std::vector<std::string> mu_scalar_names(const EntitySet& entities) {
    std::vector<std::string> names;
    names.reserve(entities.n());
    for (int i = 0; i < entities.n(); ++i) names.push_back("mu[" + entities.id(i) + "]");
    return names;
}

int cmd_aggregate(const AggregateOptions& opt) {
    const LoadedData data = load_inputs(opt);
    const int n = data.entities.n();
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);

    AggregationResult result;
    BetaSummary beta_summary;
    RankerReport ranker_report;
    DiagnosticsReport diagnostics;
    std::optional<DrawsStore> draws_store;

    const bool bayesian = opt.model == "barc" || opt.model == "barcw" || opt.model == "barcm";
    if (opt.gamma_given && opt.model != "barcm")
        throw ValidationError("--gamma applies only to --model barcm");

    if (bayesian) {
        BarcConfig cfg;
        cfg.sigma_alpha = opt.sigma_alpha;
        cfg.sigma_beta = opt.sigma_beta;
        cfg.iterations = opt.iterations;
        cfg.burn_in = opt.burn_in;
        cfg.thin = opt.thin;
        cfg.px_enabled = !opt.no_px;
        cfg.seed = opt.seed;
        cfg.validate();
        if (opt.chains < 1) throw ValidationError("--chains must be >= 1");

        std::vector<PosteriorDraws> chains(opt.chains);
        const int threads = effective_threads(opt.threads);
        parallel_for(opt.chains, threads, [&](int c) {
            BarcConfig chain_cfg = cfg;
            chain_cfg.stream_id = static_cast<std::uint64_t>(c);
            if (opt.model == "barc") {
                chains[c] = run_barc(data.lists, data.covariates, chain_cfg);
            } else if (opt.model == "barcw") {
                chains[c] = run_barcw(data.lists, data.covariates, chain_cfg);
            } else {
                DpConfig dp;
                static_cast<BarcConfig&>(dp) = chain_cfg;
                dp.gamma = opt.gamma;
                chains[c] = run_barcm(data.lists, data.covariates, dp);
            }
        });
        PosteriorDraws pooled = pool_chains(chains);
        for (const auto& w : pooled.warnings) std::cerr << "warning: " << w << "\n";

        result = aggregate_rank(pooled.centered_mu, opt.model);
        result.chains = opt.chains;
        beta_summary = covariate_effect_summary(pooled.beta, data.covariates.column_names);
        ranker_report = build_ranker_report(pooled);
        diagnostics = build_diagnostics(mu_scalar_names(data.entities), pooled.centered_mu,
                                        pooled.chain_sizes);
        if (opt.keep_draws) {
            DrawsStore store;
            store.scalar_names = mu_scalar_names(data.entities);
            for (const auto& name : data.covariates.column_names)
                store.scalar_names.push_back("beta[" + name + "]");
            for (std::size_t j = 0; j < data.lists.size(); ++j)
                if (pooled.weights.size() > 0)
                    store.scalar_names.push_back("w[" + data.lists[j].ranker_id + "]");
            const int p = static_cast<int>(pooled.beta.cols());
            const int mw = pooled.weights.size() > 0 ? static_cast<int>(pooled.weights.cols()) : 0;
            store.values.resize(pooled.draw_count(), n + p + mw);
            store.values.leftCols(n) = pooled.centered_mu;
            if (p > 0) store.values.middleCols(n, p) = pooled.beta;
            if (mw > 0) store.values.rightCols(mw) = pooled.weights;
            store.chain_sizes = pooled.chain_sizes;
            draws_store = std::move(store);
        }
    } else {
        // classical baselines
        if (opt.model == "bc") {
            const BordaResult borda_result = borda(data.lists, n);
            result.aggregated = borda_result.ranking;
            result.posterior_mean_scores.resize(n);
            for (int i = 0; i < n; ++i)
                result.posterior_mean_scores[i] =
                    borda_result.never_ranked[i] ? std::numeric_limits<double>::quiet_NaN()
                                                 : borda_result.mean_positions[i];
            for (int i = 0; i < n; ++i)
                if (borda_result.never_ranked[i])
                    std::cerr << "warning: entity '" << data.entities.id(i)
                              << "' is ranked by no list; placed last\n";
        } else if (opt.model == "mc1" || opt.model == "mc2" || opt.model == "mc3") {
            const McVariant variant = opt.model == "mc1"   ? McVariant::MC1
                                      : opt.model == "mc2" ? McVariant::MC2
                                                           : McVariant::MC3;
            const TransitionMatrix tm = build_mc_chain(data.lists, n, variant, 0.05);
            const Eigen::VectorXd pi = stationary_distribution(tm);
            result.aggregated = rank_of_scores(pi);
            result.posterior_mean_scores = pi;
        } else if (opt.model == "pl") {
            const PlParams params = fit_plackett_luce(data.lists, n);
            result.aggregated = rank_of_scores(params.gamma_pl);
            result.posterior_mean_scores = params.gamma_pl;
        } else {
            throw ValidationError("unknown model '" + opt.model + "'");
        }
        result.method = opt.model;
    }

    write_result_json((out / "result.json").string(), data.entities, result, beta_summary,
                      ranker_report, diagnostics);
    write_aggregate_csv((out / "aggregate.csv").string(), data.entities, result);
    write_diagnostics_json((out / "diagnostics.json").string(), diagnostics);
    if (draws_store) write_draws((out / "draws").string(), *draws_store);

    if (opt.json_out) {
        json summary;
        summary["model"] = opt.model;
        summary["top"] = data.entities.id(result.aggregated.entity_at(0));
        summary["out"] = opt.out_dir;
        std::cout << summary.dump() << "\n";
    }
    std::cerr << "wrote " << (out / "result.json").string() << "\n";
    return 0;
}

double json_number(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int cmd_simulate(const std::string& spec_path, const std::string& out_dir, int threads_flag,
                 bool json_out) {
    std::ifstream in(spec_path);
    if (!in) throw ParseError("cannot open spec file '" + spec_path + "'");
    json spec_json;
    try {
        in >> spec_json;
    } catch (const json::exception& e) {
        throw ParseError("spec file '" + spec_path + "': " + e.what());
    }
    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    const int threads = effective_threads(threads_flag);
    const std::string experiment = spec_json.value("experiment", "comparison");

    json summary;
    summary["experiment"] = experiment;

    // full_scale restores the published study sizes (500 comparison
    // replications; 69 rankers and 100 replications in the mixture study)
    const bool full_scale = spec_json.value("full_scale", false);

    if (experiment == "comparison") {
        ScenarioSpec spec;
        const int scenario = static_cast<int>(json_number(spec_json, "scenario", 1));
        try {
            spec = ScenarioSpec::preset(scenario);
        } catch (const ValidationError& e) {
            throw ParseError("spec file: " + std::string(e.what()));
        }
        spec.n = static_cast<int>(json_number(spec_json, "n", spec.n));
        spec.m = static_cast<int>(json_number(spec_json, "m", spec.m));
        spec.sigma = json_number(spec_json, "sigma", spec.sigma);
        spec.block_count = static_cast<int>(json_number(spec_json, "block_count", 1));
        spec.replications =
            static_cast<int>(json_number(spec_json, "replications", full_scale ? 500 : 100));
        spec.seed = static_cast<std::uint64_t>(json_number(spec_json, "seed", 1));
        spec.iterations = static_cast<int>(json_number(spec_json, "iterations", 5000));
        spec.burn_in = static_cast<int>(json_number(spec_json, "burn_in", 1000));
        std::vector<Method> methods;
        if (spec_json.contains("methods")) {
            for (const auto& name : spec_json.at("methods"))
                methods.push_back(method_from_name(name.get<std::string>()));
        } else {
            methods = {Method::BARC, Method::BC, Method::MC2, Method::MC3, Method::PL};
        }
        const ExperimentResult result = run_comparison(spec, methods, threads);

        std::ofstream csv(out / "results.csv");
        csv << "replication,method,distance,missing\n";
        csv.precision(17);
        for (int rep = 0; rep < spec.replications; ++rep)
            for (const auto& record : result.per_replication[rep])
                csv << rep + 1 << ',' << method_name(record.method) << ','
                    << (record.missing ? 0.0 : record.distance) << ','
                    << (record.missing ? 1 : 0) << '\n';
        for (Method m : methods) {
            const MethodSummary& s = result.summary.at(m);
            summary["mean_distance"][method_name(m)] = s.mean_distance;
            summary["sd_distance"][method_name(m)] = s.sd_distance;
            summary["valid_replications"][method_name(m)] = s.valid_replications;
        }
    } else if (experiment == "mixture") {
        MixtureStudyConfig cfg;
        cfg.n = static_cast<int>(json_number(spec_json, "n", cfg.n));
        cfg.p = static_cast<int>(json_number(spec_json, "p", cfg.p));
        cfg.m = static_cast<int>(json_number(spec_json, "m", full_scale ? 69 : cfg.m));
        cfg.groups = static_cast<int>(json_number(spec_json, "groups", cfg.groups));
        cfg.replications =
            static_cast<int>(json_number(spec_json, "replications", full_scale ? 100 : 20));
        cfg.seed = static_cast<std::uint64_t>(json_number(spec_json, "seed", 7));
        cfg.iterations = static_cast<int>(json_number(spec_json, "iterations", cfg.iterations));
        cfg.burn_in = static_cast<int>(json_number(spec_json, "burn_in", cfg.burn_in));
        const bool hetero = spec_json.value("heterogeneous", true);
        std::vector<double> gamma_grid{1.0 / cfg.m, 1.0};
        if (spec_json.contains("gamma_grid"))
            gamma_grid = spec_json.at("gamma_grid").get<std::vector<double>>();
        const MixtureStudyResult result = run_mixture_study(hetero, gamma_grid, cfg, threads);

        std::ofstream csv(out / "results.csv");
        csv << "gamma,replication,rand_index,posterior_clusters\n";
        csv.precision(17);
        for (const auto& g : result.per_gamma)
            for (int rep = 0; rep < cfg.replications; ++rep)
                csv << g.gamma << ',' << rep + 1 << ',' << g.rand_per_rep[rep] << ','
                    << g.clusters_per_rep[rep] << '\n';
        for (const auto& g : result.per_gamma) {
            json row{{"gamma", g.gamma},
                     {"prior_expected_clusters", g.prior_expected_clusters},
                     {"posterior_clusters", g.mean_posterior_clusters},
                     {"rand_consensus", g.mean_rand_consensus},
                     {"rand_draws", g.mean_rand_draws}};
            summary["per_gamma"].push_back(row);
        }
    } else if (experiment == "px") {
        ScenarioSpec spec = ScenarioSpec::preset(
            static_cast<int>(json_number(spec_json, "scenario", 2)));
        spec.n = static_cast<int>(json_number(spec_json, "n", 50));
        spec.m = static_cast<int>(json_number(spec_json, "m", 10));
        spec.sigma = json_number(spec_json, "sigma", 5.0);
        spec.seed = static_cast<std::uint64_t>(json_number(spec_json, "seed", 1));
        spec.iterations = static_cast<int>(json_number(spec_json, "iterations", 5000));
        spec.burn_in = static_cast<int>(json_number(spec_json, "burn_in", 1000));
        const int seeds = static_cast<int>(json_number(spec_json, "seeds", 5));
        const PxStudyResult result = run_px_study(spec, seeds);

        std::ofstream csv(out / "results.csv");
        csv << "lag,acf_px,acf_plain\n";
        csv.precision(17);
        for (int k = 0; k < result.acf_px.size(); ++k)
            csv << k << ',' << result.acf_px[k] << ',' << result.acf_plain[k] << '\n';
        summary["lag1_px"] = result.lag1_px;
        summary["lag1_plain"] = result.lag1_plain;
        summary["iact_px"] = result.iact_px;
        summary["iact_plain"] = result.iact_plain;
    } else {
        throw ParseError("spec file: unknown experiment '" + experiment + "'");
    }

    std::ofstream sj(out / "summary.json");
    sj << summary.dump(2) << "\n";
    if (json_out) std::cout << summary.dump() << "\n";
    std::cerr << "wrote " << (out / "results.csv").string() << "\n";
    return 0;
}

int cmd_diagnose(const std::string& draws_base, const std::string& out_path, bool json_out) {
    const DrawsStore store = read_draws(draws_base);
    const DiagnosticsReport report =
        build_diagnostics(store.scalar_names, store.values, store.chain_sizes);
    write_diagnostics_json(out_path, report);
    double min_rate = std::numeric_limits<double>::infinity();
    for (const auto& d : report.scalars)
        if (d.name.rfind("mu[", 0) == 0) min_rate = std::min(min_rate, d.ess_per_1000);
    if (json_out) {
        json j;
        j["scalars"] = report.scalars.size();
        j["min_mu_ess_per_1000"] = min_rate;
        std::cout << j.dump() << "\n";
    }
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank aggregation with entity covariates"};
    app.require_subcommand(1);

    AggregateOptions agg;
    CLI::App* aggregate = app.add_subcommand("aggregate", "aggregate ranking lists");
    aggregate->add_option("--model", agg.model,
                          "barc|barcw|barcm|bc|mc1|mc2|mc3|pl")->required();
    aggregate->add_option("--rankings", agg.rankings_path, "rankings CSV")->required();
    aggregate->add_option("--covariates", agg.covariates_path, "covariates CSV");
    aggregate->add_option("--iterations", agg.iterations, "Gibbs iterations per chain");
    aggregate->add_option("--burn-in", agg.burn_in, "discarded iterations per chain");
    aggregate->add_option("--thin", agg.thin, "keep every k-th draw");
    aggregate->add_option("--chains", agg.chains, "number of chains");
    aggregate->add_option("--seed", agg.seed, "RNG seed");
    aggregate->add_option("--sigma-alpha", agg.sigma_alpha, "prior sd of alpha");
    aggregate->add_option("--sigma-beta", agg.sigma_beta, "prior sd of beta");
    auto* gamma_opt = aggregate->add_option("--gamma", agg.gamma, "DP concentration (barcm)");
    aggregate->add_flag("--no-standardize", agg.no_standardize,
                        "skip covariate standardization");
    aggregate->add_flag("--no-px", agg.no_px, "plain data augmentation (no scale move)");
    aggregate->add_flag("--keep-draws", agg.keep_draws, "export the stored chain");
    aggregate->add_option("--out", agg.out_dir, "output directory");
    aggregate->add_option("--threads", agg.threads, "worker cap (default RANKFUSE_THREADS)");
    aggregate->add_flag("--json", agg.json_out, "print a JSON summary on stdout");

    std::string spec_path, sim_out = ".";
    int sim_threads = 0;
    bool sim_json = false;
    CLI::App* simulate = app.add_subcommand("simulate", "run a synthetic experiment");
    simulate->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--threads", sim_threads, "worker cap");
    simulate->add_flag("--json", sim_json, "print a JSON summary on stdout");

    std::string draws_base, diag_out;
    bool diag_json = false;
    CLI::App* diagnose = app.add_subcommand("diagnose", "chain diagnostics from a draws export");
    diagnose->add_option("--draws", draws_base, "draws base path (without .bin/.json)")
        ->required();
    diagnose->add_option("--out", diag_out, "diagnostics.json path");
    diagnose->add_flag("--json", diag_json, "print a JSON summary on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (aggregate->parsed()) {
            agg.gamma_given = gamma_opt->count() > 0;
            return cmd_aggregate(agg);
        }
        if (simulate->parsed()) return cmd_simulate(spec_path, sim_out, sim_threads, sim_json);
        if (diagnose->parsed()) {
            if (diag_out.empty()) diag_out = draws_base + "-diagnostics.json";
            return cmd_diagnose(draws_base, diag_out, diag_json);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
