#ifndef RANKFUSE_SIM_EXPERIMENTS_HPP
#define RANKFUSE_SIM_EXPERIMENTS_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "rankfuse/sim/scenarios.hpp"

namespace rankfuse {

enum class Method { BARC, BAR, BARCW, BARCM, BC, MC1, MC2, MC3, PL };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct MethodRecord {
    Method method;
    double distance = 0.0;  // normalized Kendall distance to rank(mu_true)
    bool missing = false;   // method inapplicable on this replication
};

struct MethodSummary {
    double mean_distance = 0.0;
    double sd_distance = 0.0;
    int valid_replications = 0;
};

struct ExperimentResult {
    ScenarioSpec spec;
    std::vector<Method> methods;
    std::vector<std::vector<MethodRecord>> per_replication;
    std::map<Method, MethodSummary> summary;
};

// Per replication: generate data, aggregate with each method, record the
// normalized Kendall distance to the true ranking. Inapplicable methods are
// recorded as missing, not failures.
ExperimentResult run_comparison(const ScenarioSpec& spec, const std::vector<Method>& methods,
                                int threads = 1);

struct MixtureStudyConfig {
    int n = 108;
    int p = 11;
    int m = 30;
    int groups = 9;                      // non-overlapping entity groups
    Eigen::Vector3d pi{0.5, 0.3, 0.2};   // component probabilities (heterogeneous)
    double alpha_sd = 2.0;
    double sigma = 1.0;
    int replications = 20;
    std::uint64_t seed = 7;
    int iterations = 2000;
    int burn_in = 500;
    int thin = 2;
};

struct MixtureGammaSummary {
    double gamma = 1.0;
    double prior_expected_clusters = 0.0;
    double mean_posterior_clusters = 0.0;  // across replications
    double mean_rand_consensus = 0.0;      // consensus partition vs truth
    double mean_rand_draws = 0.0;          // per-draw Rand averaged, then over reps
    std::vector<double> rand_per_rep;
    std::vector<double> clusters_per_rep;
};

struct MixtureStudyResult {
    bool heterogeneous = true;
    MixtureStudyConfig config;
    std::vector<MixtureGammaSummary> per_gamma;
};

// Heterogeneous: three latent components; homogeneous: a single component.
MixtureStudyResult run_mixture_study(bool heterogeneous, const std::vector<double>& gamma_grid,
                                     const MixtureStudyConfig& config, int threads = 1);

struct PxStudyResult {
    Eigen::VectorXd acf_px;      // averaged over seeds, lags 0..max
    Eigen::VectorXd acf_plain;
    double lag1_px = 0.0;
    double lag1_plain = 0.0;
    double iact_px = 0.0;
    double iact_plain = 0.0;
};

// Paired autocorrelation study of beta_1 under PX-DA vs plain DA on the same
// generated data, averaged over `seeds` replicates.
PxStudyResult run_px_study(const ScenarioSpec& spec, int seeds = 5, int max_lag = 50);

}  // namespace rankfuse

#endif
