#include "rankfuse/sim/experiments.hpp"

#include <cmath>

#include "rankfuse/baselines/baselines.hpp"
#include "rankfuse/core/distances.hpp"
#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"
#include "rankfuse/model/barc.hpp"
#include "rankfuse/model/barcm.hpp"
#include "rankfuse/model/barcw.hpp"
#include "rankfuse/parallel.hpp"
#include "rankfuse/summary/diagnostics.hpp"
#include "rankfuse/summary/summaries.hpp"

namespace rankfuse {

std::string method_name(Method m) {
    switch (m) {
        case Method::BARC: return "BARC";
        case Method::BAR: return "BAR";
        case Method::BARCW: return "BARCW";
        case Method::BARCM: return "BARCM";
        case Method::BC: return "BC";
        case Method::MC1: return "MC1";
        case Method::MC2: return "MC2";
        case Method::MC3: return "MC3";
        case Method::PL: return "PL";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::BARC, Method::BAR, Method::BARCW, Method::BARCM, Method::BC,
                     Method::MC1, Method::MC2, Method::MC3, Method::PL})
        if (method_name(m) == name) return m;
    throw ValidationError("unknown method '" + name + "'");
}

namespace {

constexpr double kMcSmoothing = 0.05;

FullRanking aggregate_with_method(Method method, const ScenarioData& data,
                                  const ScenarioSpec& spec, std::uint64_t rep_stream) {
    const int n = static_cast<int>(data.mu_true.size());
    switch (method) {
        case Method::BC:
            return borda(data.taus, n).ranking;
        case Method::MC1:
        case Method::MC2:
        case Method::MC3: {
            const McVariant variant = method == Method::MC1   ? McVariant::MC1
                                      : method == Method::MC2 ? McVariant::MC2
                                                              : McVariant::MC3;
            const TransitionMatrix tm = build_mc_chain(data.taus, n, variant, kMcSmoothing);
            const Eigen::VectorXd pi = stationary_distribution(tm);
            return rank_of_scores(pi);
        }
        case Method::PL: {
            const PlParams params = fit_plackett_luce(data.taus, n);
            return rank_of_scores(params.gamma_pl);
        }
        case Method::BARC:
        case Method::BAR:
        case Method::BARCW:
        case Method::BARCM: {
            CovariateMatrix X;
            if (method == Method::BAR) {
                X = CovariateMatrix::empty(n);
            } else {
                X.values = data.X;
                X = X.standardize();
            }
            BarcConfig cfg;
            cfg.iterations = spec.iterations;
            cfg.burn_in = spec.burn_in;
            cfg.seed = spec.seed;
            cfg.stream_id = rep_stream;
            if (method == Method::BARCW) {
                const PosteriorDraws draws = run_barcw(data.taus, X, cfg);
                return rank_of_scores(draws.centered_mu.colwise().mean().transpose());
            }
            if (method == Method::BARCM) {
                DpConfig dp;
                static_cast<BarcConfig&>(dp) = cfg;
                dp.store_per_ranker = false;
                const PosteriorDraws draws = run_barcm(data.taus, X, dp);
                return rank_of_scores(draws.centered_mu.colwise().mean().transpose());
            }
            const PosteriorDraws draws = run_barc(data.taus, X, cfg);
            return rank_of_scores(draws.centered_mu.colwise().mean().transpose());
        }
    }
    throw ValidationError("unsupported method");
}

}  // namespace

ExperimentResult run_comparison(const ScenarioSpec& spec, const std::vector<Method>& methods,
                                int threads) {
    spec.validate();
    if (methods.empty()) throw ValidationError("run_comparison: methods must be non-empty");
    ExperimentResult result;
    result.spec = spec;
    result.methods = methods;
    result.per_replication.resize(spec.replications);

    const RngStream base(spec.seed, 0);
    parallel_for(spec.replications, threads, [&](int rep) {
        RngStream gen_rng = base.substream(0x10000 + rep);
        const ScenarioData data = generate_scenario(spec, gen_rng);
        const FullRanking truth = rank_of_scores(data.mu_true);
        std::vector<MethodRecord> records;
        records.reserve(methods.size());
        for (std::size_t t = 0; t < methods.size(); ++t) {
            MethodRecord record;
            record.method = methods[t];
            try {
                const FullRanking agg = aggregate_with_method(
                    methods[t], data, spec,
                    0x20000u + static_cast<std::uint64_t>(rep) * 64 + t);
                record.distance = kendall_distance(agg, truth, true);
            } catch (const DegeneracyError&) {
                record.missing = true;
            }
            records.push_back(record);
        }
        result.per_replication[rep] = std::move(records);
    });

    for (Method m : methods) {
        MethodSummary s;
        double sum = 0.0, sq = 0.0;
        int count = 0;
        for (const auto& records : result.per_replication)
            for (const auto& r : records)
                if (r.method == m && !r.missing) {
                    sum += r.distance;
                    sq += r.distance * r.distance;
                    ++count;
                }
        s.valid_replications = count;
        if (count > 0) {
            s.mean_distance = sum / count;
            const double var = count > 1 ? (sq - sum * sum / count) / (count - 1) : 0.0;
            s.sd_distance = var > 0.0 ? std::sqrt(var) : 0.0;
        }
        result.summary[m] = s;
    }
    return result;
}

namespace {

struct MixtureData {
    Eigen::MatrixXd X;
    std::vector<RankingList> taus;
    std::vector<int> true_labels;
};

MixtureData generate_mixture_data(bool heterogeneous, const MixtureStudyConfig& cfg,
                                  RngStream& rng) {
    MixtureData data;
    const int components = heterogeneous ? 3 : 1;
    // covariates with AR(0.2) correlation
    Eigen::MatrixXd sigma_x(cfg.p, cfg.p);
    for (int s = 0; s < cfg.p; ++s)
        for (int t = 0; t < cfg.p; ++t) sigma_x(s, t) = std::pow(0.2, std::abs(s - t));
    const Eigen::MatrixXd chol = sigma_x.llt().matrixL();
    data.X.resize(cfg.n, cfg.p);
    for (int i = 0; i < cfg.n; ++i) {
        Eigen::VectorXd z(cfg.p);
        for (int k = 0; k < cfg.p; ++k) z[k] = rng.normal();
        data.X.row(i) = (chol * z).transpose();
    }
    // component-wise scores mu<k> = alpha<k> + X beta<k>
    std::vector<Eigen::VectorXd> mus(components);
    for (int k = 0; k < components; ++k) {
        Eigen::VectorXd alpha(cfg.n), beta(cfg.p);
        for (int i = 0; i < cfg.n; ++i) alpha[i] = rng.normal(0.0, cfg.alpha_sd);
        for (int t = 0; t < cfg.p; ++t) beta[t] = rng.normal();
        mus[k] = alpha + data.X * beta;
    }
    // shared entity grouping
    std::vector<std::vector<int>> blocks(cfg.groups);
    const int group_size = cfg.n / cfg.groups;
    for (int b = 0; b < cfg.groups; ++b)
        for (int t = 0; t < group_size; ++t) blocks[b].push_back(b * group_size + t);
    data.true_labels.resize(cfg.m);
    for (int j = 0; j < cfg.m; ++j) {
        int label = 0;
        if (heterogeneous) {
            const double u = rng.uniform();
            label = u < cfg.pi[0] ? 0 : (u < cfg.pi[0] + cfg.pi[1] ? 1 : 2);
        }
        data.true_labels[j] = label;
        auto lists = simulate_rankings(mus[label], cfg.sigma, 1, blocks, rng);
        lists.front().ranker_id = "sim-" + std::to_string(j + 1);
        data.taus.push_back(std::move(lists.front()));
    }
    return data;
}

}  // namespace

MixtureStudyResult run_mixture_study(bool heterogeneous, const std::vector<double>& gamma_grid,
                                     const MixtureStudyConfig& config, int threads) {
    if (config.replications < 1) throw ValidationError("mixture study: replications must be >= 1");
    if (config.n % config.groups != 0)
        throw ValidationError("mixture study: n must be divisible by groups");
    MixtureStudyResult result;
    result.heterogeneous = heterogeneous;
    result.config = config;
    result.per_gamma.resize(gamma_grid.size());

    for (std::size_t g = 0; g < gamma_grid.size(); ++g) {
        MixtureGammaSummary& summary = result.per_gamma[g];
        summary.gamma = gamma_grid[g];
        summary.prior_expected_clusters = crp_expected_clusters(config.m, gamma_grid[g]);
        summary.rand_per_rep.resize(config.replications);
        summary.clusters_per_rep.resize(config.replications);
        std::vector<double> rand_draws(config.replications);
        const RngStream base(config.seed, 0x5100 + g);
        parallel_for(config.replications, threads, [&](int rep) {
            RngStream gen_rng = base.substream(rep);
            const MixtureData data = generate_mixture_data(heterogeneous, config, gen_rng);
            CovariateMatrix X;
            X.values = data.X;
            X = X.standardize();
            DpConfig cfg;
            cfg.gamma = gamma_grid[g];
            cfg.iterations = config.iterations;
            cfg.burn_in = config.burn_in;
            cfg.thin = config.thin;
            cfg.seed = config.seed;
            cfg.stream_id = 0x6000 + 977 * g + rep;
            cfg.store_per_ranker = false;
            const PosteriorDraws draws = run_barcm(data.taus, X, cfg);
            summary.clusters_per_rep[rep] = cluster_count_per_draw(draws.allocations).mean();
            const std::vector<int> consensus = consensus_partition(draws.allocations);
            summary.rand_per_rep[rep] = rand_index(consensus, data.true_labels);
            double acc = 0.0;
            for (const auto& q : draws.allocations) acc += rand_index(q, data.true_labels);
            rand_draws[rep] = acc / draws.allocations.size();
        });
        double rc = 0.0, rd = 0.0, cc = 0.0;
        for (int rep = 0; rep < config.replications; ++rep) {
            rc += summary.rand_per_rep[rep];
            rd += rand_draws[rep];
            cc += summary.clusters_per_rep[rep];
        }
        summary.mean_rand_consensus = rc / config.replications;
        summary.mean_rand_draws = rd / config.replications;
        summary.mean_posterior_clusters = cc / config.replications;
    }
    return result;
}

PxStudyResult run_px_study(const ScenarioSpec& spec, int seeds, int max_lag) {
    if (spec.p < 1) throw ValidationError("px study: needs p >= 1");
    PxStudyResult result;
    result.acf_px = Eigen::VectorXd::Zero(max_lag + 1);
    result.acf_plain = Eigen::VectorXd::Zero(max_lag + 1);
    double iact_px = 0.0, iact_plain = 0.0;
    for (int s = 0; s < seeds; ++s) {
        RngStream gen_rng = RngStream(spec.seed, 0x9100).substream(s);
        const ScenarioData data = generate_scenario(spec, gen_rng);
        CovariateMatrix X;
        X.values = data.X;
        X = X.standardize();
        BarcConfig cfg;
        cfg.iterations = spec.iterations;
        cfg.burn_in = spec.burn_in;
        cfg.seed = spec.seed;
        for (bool px : {true, false}) {
            cfg.px_enabled = px;
            cfg.stream_id = 0x9200 + 2 * s + (px ? 0 : 1);
            const PosteriorDraws draws = run_barc(data.taus, X, cfg);
            const Eigen::VectorXd beta1 = draws.beta.col(0);
            const Eigen::VectorXd acf = autocorrelations(beta1, max_lag);
            const double iact = integrated_autocorrelation(beta1);
            if (px) {
                result.acf_px += acf;
                iact_px += iact;
            } else {
                result.acf_plain += acf;
                iact_plain += iact;
            }
        }
    }
    result.acf_px /= seeds;
    result.acf_plain /= seeds;
    result.lag1_px = result.acf_px[1];
    result.lag1_plain = result.acf_plain[1];
    result.iact_px = iact_px / seeds;
    result.iact_plain = iact_plain / seeds;
    return result;
}

}  // namespace rankfuse
