#ifndef RANKFUSE_SUMMARY_DIAGNOSTICS_HPP
#define RANKFUSE_SUMMARY_DIAGNOSTICS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rankfuse {

// Sample autocorrelations rho_0..rho_max_lag (rho_0 = 1). A constant series
// reports rho_k = 0 for k >= 1.
Eigen::VectorXd autocorrelations(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag);

// Integrated autocorrelation time 1 + 2 sum rho_k using Geyer's initial
// monotone sequence: even-lag pair sums are accumulated until the first
// non-positive pair, enforcing monotone decrease. Constant series -> 1.
double integrated_autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& series);

// ESS = N / IACT; a constant series reports N by convention.
double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& series);

// Monte Carlo standard error of the series mean, sqrt(gamma_0 * IACT / N).
double mcse(const Eigen::Ref<const Eigen::VectorXd>& series);

struct ScalarDiagnostics {
    std::string name;
    double ess = 0.0;            // pooled across chains (sum of per-chain ESS)
    double ess_per_1000 = 0.0;   // pooled ESS per 1000 stored draws
    double mcse = 0.0;           // from pooled draws, per-chain conservative max
    std::vector<double> per_chain_ess;
    std::vector<double> acf;     // pooled-first-chain ACF up to lag 50
    std::vector<double> trace;   // thinned trace extract
    bool constant = false;
};

struct DiagnosticsReport {
    std::vector<ScalarDiagnostics> scalars;
    int draws_per_chain = 0;
    int chains = 1;
};

// Chain-aware report: series holds the stored draws of each monitored scalar
// in columns; chain_sizes partitions the rows into chains.
DiagnosticsReport build_diagnostics(const std::vector<std::string>& names,
                                    const Eigen::Ref<const Eigen::MatrixXd>& series,
                                    const std::vector<int>& chain_sizes, int acf_lags = 50,
                                    int trace_points = 200);

}  // namespace rankfuse

#endif
