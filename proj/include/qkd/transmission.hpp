#pragma once

#include "qkd/system_model.hpp"

namespace qkd {

/// Probability that exactly m of n photons survive a channel with per-photon
/// survival probability p_qc (binomial thinning). Exact at the endpoints
/// p_qc = 0 and p_qc = 1. Throws std::domain_error when m > n or inputs are
/// out of range.
double binomial_transmission(int n, int m, double p_qc);

/// Probability that Bob's basis choice is compatible with Alice's state,
/// assuming independent choices. Returns the sifting-ratio override verbatim
/// when one is configured.
double correct_basis_probability(const ProtocolConfig& protocol);

} // namespace qkd
