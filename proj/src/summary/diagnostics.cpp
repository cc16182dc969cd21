#include "rankfuse/summary/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rankfuse {

namespace {

// autocovariances gamma_0..gamma_max_lag (1/N normalization)
Eigen::VectorXd autocovariances(const Eigen::Ref<const Eigen::VectorXd>& x, int max_lag) {
    const int n = static_cast<int>(x.size());
    const double mean = x.mean();
    Eigen::VectorXd centered = x.array() - mean;
    Eigen::VectorXd gamma(max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (int t = 0; t + k < n; ++t) acc += centered[t] * centered[t + k];
        gamma[k] = acc / n;
    }
    return gamma;
}

}  // namespace

Eigen::VectorXd autocorrelations(const Eigen::Ref<const Eigen::VectorXd>& series, int max_lag) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw std::invalid_argument("autocorrelations: series too short");
    max_lag = std::min(max_lag, n - 1);
    Eigen::VectorXd gamma = autocovariances(series, max_lag);
    Eigen::VectorXd rho(max_lag + 1);
    if (gamma[0] <= 0.0) {
        rho.setZero();
        rho[0] = 1.0;
        return rho;
    }
    for (int k = 0; k <= max_lag; ++k) rho[k] = gamma[k] / gamma[0];
    return rho;
}

double integrated_autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const int n = static_cast<int>(series.size());
    if (n < 10) throw std::invalid_argument("integrated_autocorrelation: need length >= 10");
    Eigen::VectorXd gamma = autocovariances(series, n - 1);
    if (gamma[0] <= 0.0) return 1.0;  // constant series
    double pair_prev = std::numeric_limits<double>::infinity();
    double sum_pairs = 0.0;
    for (int t = 0; 2 * t + 1 < n; ++t) {
        double pair = (gamma[2 * t] + gamma[2 * t + 1]) / gamma[0];
        if (pair <= 0.0) break;
        pair = std::min(pair, pair_prev);  // initial monotone sequence
        sum_pairs += pair;
        pair_prev = pair;
    }
    return std::max(1.0, 2.0 * sum_pairs - 1.0);
}

double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& series) {
    return static_cast<double>(series.size()) / integrated_autocorrelation(series);
}

double mcse(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const int n = static_cast<int>(series.size());
    Eigen::VectorXd gamma = autocovariances(series, 0);
    if (gamma[0] <= 0.0) return 0.0;
    return std::sqrt(gamma[0] * integrated_autocorrelation(series) / n);
}

DiagnosticsReport build_diagnostics(const std::vector<std::string>& names,
                                    const Eigen::Ref<const Eigen::MatrixXd>& series,
                                    const std::vector<int>& chain_sizes, int acf_lags,
                                    int trace_points) {
    const int total = static_cast<int>(series.rows());
    const int k = static_cast<int>(series.cols());
    if (static_cast<int>(names.size()) != k)
        throw std::invalid_argument("build_diagnostics: names must match columns");
    std::vector<int> sizes = chain_sizes;
    if (sizes.empty()) sizes = {total};
    int sum = 0;
    for (int s : sizes) sum += s;
    if (sum != total) throw std::invalid_argument("build_diagnostics: chain sizes mismatch");

    DiagnosticsReport report;
    report.chains = static_cast<int>(sizes.size());
    report.draws_per_chain = sizes.front();
    report.scalars.reserve(k);
    for (int c = 0; c < k; ++c) {
        ScalarDiagnostics d;
        d.name = names[c];
        double ess_total = 0.0;
        double worst_mcse = 0.0;
        int offset = 0;
        bool all_constant = true;
        for (int s : sizes) {
            const Eigen::VectorXd chain = series.col(c).segment(offset, s);
            offset += s;
            const double sd2 = (chain.array() - chain.mean()).square().sum();
            const bool constant = !(sd2 > 0.0);
            all_constant = all_constant && constant;
            const double ess = constant ? s : effective_sample_size(chain);
            d.per_chain_ess.push_back(ess);
            ess_total += ess;
            worst_mcse = std::max(worst_mcse, constant ? 0.0 : mcse(chain));
        }
        d.constant = all_constant;
        d.ess = ess_total;
        d.ess_per_1000 = 1000.0 * ess_total / total;
        d.mcse = worst_mcse;
        const Eigen::VectorXd first_chain = series.col(c).head(sizes.front());
        const Eigen::VectorXd rho =
            autocorrelations(first_chain, std::min(acf_lags, sizes.front() - 1));
        d.acf.assign(rho.data(), rho.data() + rho.size());
        const int stride = std::max(1, total / trace_points);
        for (int t = 0; t < total; t += stride) d.trace.push_back(series(t, c));
        report.scalars.push_back(std::move(d));
    }
    return report;
}

}  // namespace rankfuse
