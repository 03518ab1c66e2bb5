#pragma once

#include <vector>

namespace qkd {

/// Photon-number distribution of one pulse, truncated at n_max with the
/// remaining mass kept explicit. probs[n] is the probability of an
/// n-photon pulse, n = 0..n_max. Any provider of this shape can stand in
/// for the Poisson statistics of an attenuated laser.
struct PhotonNumberDistribution {
    std::vector<double> probs;
    double tail_mass{};
    double mu{};

    int n_max() const { return static_cast<int>(probs.size()) - 1; }
};

/// Poisson mass mu^n e^(-mu) / n!. Throws std::domain_error for mu < 0.
double poisson_pn(double mu, int n);

struct ThreeBranch {
    double p0;
    double p1;
    double p2plus; ///< two and more photons, lumped
};

/// Three-branch split of the pulse statistics: zero / one / two-plus photons.
ThreeBranch lumped_three_branch(double mu);

/// Smallest truncation such that the Poisson tail beyond n_max is below
/// tail_tol; the remainder is kept as tail_mass.
PhotonNumberDistribution truncated_distribution(double mu, double tail_tol);

/// Truncation at a caller-chosen n_max; the exact remainder goes to tail_mass.
PhotonNumberDistribution truncated_distribution_fixed(double mu, int n_max);

} // namespace qkd
