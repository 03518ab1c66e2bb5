#include "qkd/transmission.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd {

namespace {

// Binomial coefficient as a double. The multiplicative form keeps the
// relative error near m*eps and stays finite for every n with a
// representable central coefficient (n up to ~1000).
double binomial_coefficient(int n, int m) {
    if (m > n - m) {
        m = n - m;
    }
    double c = 1.0;
    for (int k = 1; k <= m; ++k) {
        c *= static_cast<double>(n - m + k) / static_cast<double>(k);
    }
    return c;
}

} // namespace

double binomial_transmission(int n, int m, double p_qc) {
    if (n < 0 || m < 0 || m > n) {
        throw std::domain_error("transmitted photon count must satisfy 0 <= m <= n");
    }
    if (!(p_qc >= 0.0 && p_qc <= 1.0)) {
        throw std::domain_error("survival probability must lie in [0,1]");
    }
    if (p_qc == 0.0) {
        return m == 0 ? 1.0 : 0.0;
    }
    if (p_qc == 1.0) {
        return m == n ? 1.0 : 0.0;
    }
    if (n == 0) {
        return 1.0;
    }
    if (n > 900) {
        // log space; only reachable with extreme photon-number truncations
        return std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0) +
                        m * std::log(p_qc) + (n - m) * std::log1p(-p_qc));
    }
    return binomial_coefficient(n, m) * std::pow(p_qc, m) * std::pow(1.0 - p_qc, n - m);
}

double correct_basis_probability(const ProtocolConfig& protocol) {
    if (protocol.sifting_ratio_override) {
        return *protocol.sifting_ratio_override;
    }
    const auto& a = protocol.alice_state_probs; // {0, pi/2, pi, 3pi/2}
    const auto& b = protocol.bob_basis_probs;   // {0, pi/2}
    // Compatible pairs: {0|0}, {pi/2|pi/2}, {0|pi}, {pi/2|3pi/2}.
    return b[0] * a[0] + b[1] * a[1] + b[0] * a[2] + b[1] * a[3];
}

} // namespace qkd
