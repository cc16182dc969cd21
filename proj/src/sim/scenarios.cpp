#include "rankfuse/sim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankfuse/errors.hpp"
#include "rankfuse/model/barc.hpp"

namespace rankfuse {

ScenarioSpec ScenarioSpec::preset(int scenario) {
    ScenarioSpec spec;
    spec.scenario = scenario;
    switch (scenario) {
        case 1:
            spec.p = 4;
            spec.rho = 0.2;
            spec.beta_true = Eigen::Vector4d(3.0, 2.0, 1.0, 0.5);
            break;
        case 2:
            spec.p = 3;
            spec.rho = 0.5;
            spec.beta_true = Eigen::Vector3d(3.0, 2.0, 1.0);
            break;
        case 3:
            spec.p = 4;
            spec.rho = 0.5;
            spec.beta_true = Eigen::VectorXd();
            break;
        default:
            throw ValidationError("scenario preset must be 1, 2 or 3");
    }
    return spec;
}

void ScenarioSpec::validate() const {
    if (scenario < 0 || scenario > 3) throw ValidationError("scenario must be 0 (custom), 1, 2 or 3");
    if (n < 2 || m < 1 || p < 0) throw ValidationError("scenario: need n >= 2, m >= 1, p >= 0");
    if (!(sigma > 0.0)) throw ValidationError("scenario: sigma must be positive");
    if (block_count < 1) throw ValidationError("scenario: block_count must be >= 1");
    if (n % block_count != 0)
        throw ValidationError("scenario: n must be divisible by block_count");
    if (replications < 1) throw ValidationError("scenario: replications must be >= 1");
    if ((scenario == 1 || scenario == 2) && beta_true.size() != p)
        throw ValidationError("scenario: beta_true must have length p");
}

ScenarioData generate_scenario(const ScenarioSpec& spec, RngStream& rng) {
    spec.validate();
    ScenarioData data;
    // AR(rho) covariance via its Cholesky factor
    Eigen::MatrixXd sigma_x(spec.p, spec.p);
    for (int s = 0; s < spec.p; ++s)
        for (int t = 0; t < spec.p; ++t) sigma_x(s, t) = std::pow(spec.rho, std::abs(s - t));
    Eigen::MatrixXd chol;
    if (spec.p > 0) chol = sigma_x.llt().matrixL();
    data.X.resize(spec.n, spec.p);
    for (int i = 0; i < spec.n; ++i) {
        Eigen::VectorXd z(spec.p);
        for (int k = 0; k < spec.p; ++k) z[k] = rng.normal();
        if (spec.p > 0) data.X.row(i) = (chol * z).transpose();
    }
    data.mu_true.resize(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        const Eigen::VectorXd x = data.X.row(i).transpose();
        switch (spec.scenario) {
            case 1:
                data.mu_true[i] = x.dot(spec.beta_true);
                break;
            case 2:
                data.mu_true[i] = x.dot(spec.beta_true) + x.squaredNorm();
                break;
            case 3:
                data.mu_true[i] = x.squaredNorm();
                break;
            default:  // custom: linear when beta_true given, else |x|^2
                data.mu_true[i] =
                    spec.beta_true.size() == spec.p && spec.p > 0 ? x.dot(spec.beta_true)
                                                                  : x.squaredNorm();
        }
    }
    std::optional<std::vector<std::vector<int>>> blocks;
    if (spec.block_count > 1) {
        std::vector<int> perm(spec.n);
        std::iota(perm.begin(), perm.end(), 0);
        // Fisher-Yates with the stream
        for (int i = spec.n - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_index(i + 1));
            std::swap(perm[i], perm[j]);
        }
        const int size = spec.n / spec.block_count;
        data.blocks.resize(spec.block_count);
        for (int b = 0; b < spec.block_count; ++b)
            data.blocks[b].assign(perm.begin() + b * size, perm.begin() + (b + 1) * size);
        blocks = data.blocks;
    }
    data.taus = simulate_rankings(data.mu_true, spec.sigma, spec.m, blocks, rng);
    return data;
}

double pairwise_coverage(int n, int k) {
    if (k < 1 || n % k != 0) throw ValidationError("pairwise_coverage: n must be divisible by k");
    const double size = static_cast<double>(n / k);
    const double observed = k * size * (size - 1) / 2.0;
    const double total = static_cast<double>(n) * (n - 1) / 2.0;
    return observed / total;
}

}  // namespace rankfuse
