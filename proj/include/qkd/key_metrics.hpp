#pragma once

#include "qkd/event_tree.hpp"
#include "qkd/system_model.hpp"

namespace qkd {

/// Headline link metrics: per-pulse sifted-bit effectiveness, QBER, the
/// shortening coefficient and the resulting key rates.
struct KeyMetrics {
    double p_sigma{};
    SubgroupSums subgroups;
    double p_err{};
    double epsilon{};
    double sifted_rate_bps{};
    double private_rate_bps{};
};

/// Binary entropy in bits. Exact 0 at the endpoints, exact 1 at 1/2.
double binary_entropy(double x);

/// Per-pulse probability of producing a sifted-key bit: the sum of the four
/// subgroup masses.
double sifted_key_effectiveness(const SubgroupSums& sums);

/// QBER: error mass over total sifted mass. Throws NoSiftedKeyError when the
/// total is zero.
double bit_error_probability(const SubgroupSums& sums);

/// Key-length shortening coefficient for a given error rate. Analytic
/// strategies return 0 beyond p_err = 0.5 (no extractable key); the table
/// strategy interpolates linearly and clamps at its endpoints.
double epsilon(const EpsilonStrategy& strategy, double p_err);

/// Private-key bits per second: pulse_rate * p_sigma * eps.
double private_key_rate(double pulse_rate_hz, double p_sigma, double eps);

/// Packages all metrics for one evaluated tree. Throws NoSiftedKeyError when
/// the tree produced no sifted-key mass.
KeyMetrics compute_key_metrics(const SystemConfig& config, const EventTree& tree);

} // namespace qkd
