#pragma once

#include <cstdint>
#include <optional>

#include "qkd/system_model.hpp"

namespace qkd {

/// Tallies of one simulation run. Every pulse lands in exactly one of the
/// seven terminal categories.
struct SimulationResult {
    std::uint64_t pulses{};
    std::uint64_t seed{};

    std::uint64_t err_dark{};
    std::uint64_t bit_dark{};
    std::uint64_t err_real{};
    std::uint64_t bit_real{};
    std::uint64_t discard_no_detection{};
    std::uint64_t discard_double{};
    std::uint64_t discard_wrong_basis{};

    std::uint64_t sifted_bits() const { return err_dark + bit_dark + err_real + bit_real; }
    std::uint64_t error_bits() const { return err_dark + err_real; }

    double p_sigma_hat() const {
        return pulses == 0 ? 0.0 : static_cast<double>(sifted_bits()) / static_cast<double>(pulses);
    }
    std::optional<double> qber_hat() const {
        if (sifted_bits() == 0) {
            return std::nullopt;
        }
        return static_cast<double>(error_bits()) / static_cast<double>(sifted_bits());
    }

    bool operator==(const SimulationResult&) const = default;
};

struct StandardErrors {
    double p_sigma{};
    std::optional<double> qber;
};

/// Pulse-by-pulse simulation of the physical chain: photon generation,
/// channel thinning, basis comparison, routing and detector firing. Pulses
/// are processed in fixed-size blocks with per-block random streams derived
/// from (seed, block index), so the result is bit-identical for any worker
/// count. threads = 0 picks the hardware default.
SimulationResult simulate(const SystemConfig& config, std::uint64_t pulses, std::uint64_t seed,
                          unsigned threads = 0);

/// Binomial standard errors of the two estimates: sqrt(p(1-p)/N) with
/// N = pulses for p_sigma and N = sifted bits for the QBER (absent when no
/// bits were sifted).
StandardErrors estimate_standard_errors(const SimulationResult& result);

} // namespace qkd
