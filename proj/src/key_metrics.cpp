#include "qkd/key_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkd/errors.hpp"

namespace qkd {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("binary entropy argument must lie in [0,1]");
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    if (x == 0.5) {
        return 1.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double sifted_key_effectiveness(const SubgroupSums& sums) {
    return sums.total();
}

double bit_error_probability(const SubgroupSums& sums) {
    const double total = sums.total();
    if (total <= 0.0) {
        throw NoSiftedKeyError();
    }
    return (sums.err_dark + sums.err_real) / total;
}

double epsilon(const EpsilonStrategy& strategy, double p_err) {
    if (!(p_err >= 0.0 && p_err <= 1.0)) {
        throw std::domain_error("p_err must lie in [0,1]");
    }
    switch (strategy.kind) {
        case EpsilonKind::IdealShannon: {
            if (p_err > 0.5) {
                return 0.0;
            }
            return std::max(0.0, 1.0 - 2.0 * binary_entropy(p_err));
        }
        case EpsilonKind::LinearEfficiency: {
            if (p_err > 0.5) {
                return 0.0;
            }
            const double h = binary_entropy(p_err);
            return std::max(0.0, 1.0 - strategy.f_ec * h - h);
        }
        case EpsilonKind::Table: {
            const auto& pts = strategy.table;
            if (pts.empty()) {
                throw std::domain_error("epsilon table is empty");
            }
            if (p_err <= pts.front().first) {
                return pts.front().second;
            }
            if (p_err >= pts.back().first) {
                return pts.back().second;
            }
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (p_err <= pts[i].first) {
                    const auto& [x0, y0] = pts[i - 1];
                    const auto& [x1, y1] = pts[i];
                    return y0 + (y1 - y0) * (p_err - x0) / (x1 - x0);
                }
            }
            return pts.back().second;
        }
    }
    throw std::logic_error("unknown epsilon strategy");
}

double private_key_rate(double pulse_rate_hz, double p_sigma, double eps) {
    return pulse_rate_hz * p_sigma * eps;
}

KeyMetrics compute_key_metrics(const SystemConfig& config, const EventTree& tree) {
    KeyMetrics metrics;
    metrics.subgroups = subgroup_sums(tree);
    metrics.p_sigma = sifted_key_effectiveness(metrics.subgroups);
    metrics.p_err = bit_error_probability(metrics.subgroups); // throws when p_sigma == 0
    metrics.epsilon = epsilon(config.engine.epsilon, metrics.p_err);
    metrics.sifted_rate_bps = config.source.pulse_rate_hz * metrics.p_sigma;
    metrics.private_rate_bps =
        private_key_rate(config.source.pulse_rate_hz, metrics.p_sigma, metrics.epsilon);
    return metrics;
}

} // namespace qkd
