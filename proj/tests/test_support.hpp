#pragma once

#include <random>

#include "qkd/system_model.hpp"

#ifndef QKDLINK_FIXTURE_PATH
#define QKDLINK_FIXTURE_PATH "configs/clavis2_25km.json"
#endif

namespace qkd::test {

/// Benchmark-style base configuration used across suites.
inline SystemConfig base_config() {
    SystemConfig config;
    config.source.pulse_energy_j = 1.2816e-17;
    config.source.wavelength_m = 1.55e-6;
    config.source.pulse_rate_hz = 5e6;
    config.path.channel_atten_db_per_km = 0.2;
    config.path.channel_length_km = 25.0;
    config.path.voa_alice_db = 23.0;
    config.detector1 = {0.10, 1e-5, 1.0};
    config.detector2 = {0.10, 1e-5, 1.0};
    config.protocol.optical_error_prob = 0.01;
    config.engine.mu_override = 0.5;
    return config;
}

/// Randomized valid configuration for property tests. Spans asymmetric
/// detectors, both composition modes and the physically interesting mu range.
inline SystemConfig random_config(std::mt19937& rng) {
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    SystemConfig config = base_config();
    config.path.channel_length_km = uniform(0.0, 80.0);
    config.path.extra_loss_db = uniform(0.0, 3.0);
    config.detector1 = {uniform(0.0, 1.0), uniform(0.0, 1e-3), uniform(0.1, 1.0)};
    config.detector2 = {uniform(0.0, 1.0), uniform(0.0, 1e-3), uniform(0.1, 1.0)};
    config.protocol.optical_error_prob = uniform(0.0, 0.5);
    config.engine.mu_override = uniform(1e-3, 2.0);
    if (rng() % 4 == 0) {
        config.protocol.sifting_ratio_override = uniform(0.05, 1.0);
    }
    return config;
}

} // namespace qkd::test
