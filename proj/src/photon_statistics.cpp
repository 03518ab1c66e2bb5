#include "qkd/photon_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkd {

namespace {

// Hard ceiling on the truncation search; Poisson mass at 100k photons is
// far below any representable tail tolerance for the mu range of interest.
constexpr int kTruncationCeiling = 100000;

} // namespace

double poisson_pn(double mu, int n) {
    if (!(mu >= 0.0)) {
        throw std::domain_error("mean photon number must be >= 0");
    }
    if (n < 0) {
        throw std::domain_error("photon count must be >= 0");
    }
    if (mu == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    // exp(-mu) underflows around mu ~ 745; switch to log space there. Below
    // that, the running product e^-mu * mu^k / k! never exceeds 1, so the
    // recurrence is overflow-free and accurate to a few ulp per step.
    if (mu > 700.0 || n > 10000) {
        return std::exp(n * std::log(mu) - mu - std::lgamma(static_cast<double>(n) + 1.0));
    }
    double p = std::exp(-mu);
    for (int k = 1; k <= n; ++k) {
        p *= mu / static_cast<double>(k);
    }
    return p;
}

ThreeBranch lumped_three_branch(double mu) {
    const double p0 = poisson_pn(mu, 0);
    const double p1 = poisson_pn(mu, 1);
    const double p2plus = std::clamp(1.0 - (p0 + p1), 0.0, 1.0);
    return {p0, p1, p2plus};
}

PhotonNumberDistribution truncated_distribution(double mu, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw std::domain_error("tail tolerance must lie in (0,1)");
    }
    PhotonNumberDistribution dist;
    dist.mu = mu;
    double cumulative = 0.0;
    for (int n = 0; n <= kTruncationCeiling; ++n) {
        const double p = poisson_pn(mu, n);
        dist.probs.push_back(p);
        cumulative += p;
        const double tail = std::max(0.0, 1.0 - cumulative);
        if (tail < tail_tol) {
            dist.tail_mass = tail;
            return dist;
        }
    }
    dist.tail_mass = std::max(0.0, 1.0 - cumulative);
    return dist;
}

PhotonNumberDistribution truncated_distribution_fixed(double mu, int n_max) {
    if (n_max < 0) {
        throw std::domain_error("n_max must be >= 0");
    }
    PhotonNumberDistribution dist;
    dist.mu = mu;
    double cumulative = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double p = poisson_pn(mu, n);
        dist.probs.push_back(p);
        cumulative += p;
    }
    dist.tail_mass = std::max(0.0, 1.0 - cumulative);
    return dist;
}

} // namespace qkd
