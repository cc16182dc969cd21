#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rankfuse/core/distances.hpp"
#include "rankfuse/core/rank.hpp"
#include "rankfuse/errors.hpp"
#include "rankfuse/model/barcm.hpp"
#include "rankfuse/sim/experiments.hpp"
#include "rankfuse/sim/scenarios.hpp"

using namespace rankfuse;

TEST_CASE("scenario presets pin the paper constants") {
    const ScenarioSpec s1 = ScenarioSpec::preset(1);
    CHECK(s1.p == 4);
    CHECK(s1.rho == 0.2);
    CHECK(s1.beta_true.transpose() == Eigen::RowVector4d(3, 2, 1, 0.5));
    const ScenarioSpec s2 = ScenarioSpec::preset(2);
    CHECK(s2.p == 3);
    CHECK(s2.rho == 0.5);
    const ScenarioSpec s3 = ScenarioSpec::preset(3);
    CHECK(s3.p == 4);
    CHECK(s3.rho == 0.5);
}

TEST_CASE("scenario 3: mu equals |x|^2 exactly") {
    ScenarioSpec spec = ScenarioSpec::preset(3);
    spec.n = 30;
    RngStream rng(90);
    const ScenarioData data = generate_scenario(spec, rng);
    for (int i = 0; i < spec.n; ++i)
        CHECK(data.mu_true[i] == doctest::Approx(data.X.row(i).squaredNorm()).epsilon(1e-12));
}

TEST_CASE("scenario 1 covariates have AR(0.2) covariance") {
    ScenarioSpec spec = ScenarioSpec::preset(1);
    spec.n = 100000;
    spec.m = 1;
    RngStream rng(91);
    // generating this many rankings would be wasteful; use the X part only
    spec.sigma = 1.0;
    const ScenarioData data = generate_scenario(spec, rng);
    Eigen::MatrixXd centered = data.X.rowwise() - data.X.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / (spec.n - 1);
    for (int s = 0; s < spec.p; ++s)
        for (int t = 0; t < spec.p; ++t)
            CHECK(std::abs(cov(s, t) - std::pow(0.2, std::abs(s - t))) < 0.01);
}

TEST_CASE("partial-list coverage identity at k=16, n=80") {
    CHECK(pairwise_coverage(80, 16) == doctest::Approx(160.0 / 3160.0).epsilon(1e-15));
    CHECK(pairwise_coverage(80, 16) == doctest::Approx(0.0506).epsilon(1e-3));
    // generated lists observe exactly that fraction of pairs
    ScenarioSpec spec = ScenarioSpec::preset(2);
    spec.n = 80;
    spec.m = 3;
    spec.block_count = 16;
    RngStream rng(92);
    const ScenarioData data = generate_scenario(spec, rng);
    for (const auto& tau : data.taus) {
        REQUIRE(tau.blocks.size() == 16);
        int pairs = 0;
        for (const auto& block : tau.blocks) {
            CHECK(block.size() == 5);
            pairs += 5 * 4 / 2;
        }
        CHECK(pairs / (80.0 * 79.0 / 2.0) ==
              doctest::Approx(pairwise_coverage(80, 16)).epsilon(1e-15));
    }
    // all rankers share one division per replication
    std::vector<std::vector<int>> sorted_blocks = data.blocks;
    for (auto& b : sorted_blocks) std::sort(b.begin(), b.end());
    for (const auto& tau : data.taus) {
        for (const auto& block : tau.blocks) {
            std::vector<int> s = block;
            std::sort(s.begin(), s.end());
            CHECK(std::find(sorted_blocks.begin(), sorted_blocks.end(), s) !=
                  sorted_blocks.end());
        }
    }
}

TEST_CASE("block-size error when n is not divisible by k") {
    ScenarioSpec spec = ScenarioSpec::preset(1);
    spec.n = 50;
    spec.block_count = 3;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("noiseless lists are recovered exactly by the simple methods") {
    ScenarioSpec spec = ScenarioSpec::preset(1);
    spec.n = 20;
    spec.m = 5;
    spec.sigma = 1e-9;
    spec.replications = 2;
    spec.iterations = 800;
    spec.burn_in = 200;
    spec.seed = 93;
    const ExperimentResult result =
        run_comparison(spec, {Method::BC, Method::MC2, Method::MC3, Method::BARC});
    for (Method m : {Method::BC, Method::MC2, Method::MC3, Method::BARC}) {
        CHECK(result.summary.at(m).mean_distance < 0.02);
        CHECK(result.summary.at(m).valid_replications == 2);
    }
    CHECK(result.summary.at(Method::BC).mean_distance == 0.0);
}

TEST_CASE("experiments are reproducible from (spec, seed)") {
    ScenarioSpec spec = ScenarioSpec::preset(1);
    spec.n = 12;
    spec.m = 4;
    spec.replications = 3;
    spec.iterations = 300;
    spec.burn_in = 50;
    spec.seed = 94;
    const ExperimentResult a = run_comparison(spec, {Method::BC, Method::BARC}, 2);
    const ExperimentResult b = run_comparison(spec, {Method::BC, Method::BARC}, 1);
    for (int rep = 0; rep < 3; ++rep)
        for (std::size_t t = 0; t < a.per_replication[rep].size(); ++t)
            CHECK(a.per_replication[rep][t].distance == b.per_replication[rep][t].distance);
}

TEST_CASE("px study: lag-1 autocorrelation drops under parameter expansion") {
    ScenarioSpec spec = ScenarioSpec::preset(2);
    spec.n = 20;
    spec.m = 5;
    spec.sigma = 5.0;
    spec.iterations = 3000;
    spec.burn_in = 500;
    spec.seed = 95;
    const PxStudyResult result = run_px_study(spec, 3);
    CHECK(result.lag1_px < result.lag1_plain);
    CHECK(result.iact_plain / result.iact_px > 1.0);
    CHECK(result.acf_px[0] == doctest::Approx(1.0));
}

TEST_CASE("mixture study smoke run: prior column and homogeneous counts") {
    MixtureStudyConfig cfg;
    cfg.n = 24;
    cfg.p = 3;
    cfg.m = 8;
    cfg.groups = 4;
    cfg.replications = 2;
    cfg.iterations = 400;
    cfg.burn_in = 100;
    cfg.thin = 1;
    cfg.seed = 96;
    const MixtureStudyResult result = run_mixture_study(false, {1.0 / 8.0, 1.0}, cfg, 2);
    REQUIRE(result.per_gamma.size() == 2);
    CHECK(result.per_gamma[0].prior_expected_clusters ==
          doctest::Approx(crp_expected_clusters(8, 1.0 / 8.0)));
    CHECK(result.per_gamma[1].prior_expected_clusters ==
          doctest::Approx(crp_expected_clusters(8, 1.0)));
    for (const auto& g : result.per_gamma) {
        CHECK(g.mean_posterior_clusters >= 1.0);
        CHECK(g.mean_posterior_clusters < 3.0);  // homogeneous data barely split
        CHECK(g.mean_rand_consensus == 1.0);     // single true cluster: Rand is 1 iff together
    }
}
