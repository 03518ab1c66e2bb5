#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace qkd {

/// Attenuated-laser pulse source.
struct LaserSource {
    double pulse_energy_j{};  ///< energy per laser pulse, J
    double wavelength_m{};    ///< carrier wavelength, m
    double pulse_rate_hz{};   ///< effective pulses per second

    bool operator==(const LaserSource&) const = default;
};

/// Losses along the optical path, all in dB (datasheet convention).
struct OpticalPath {
    double channel_atten_db_per_km{};
    double channel_length_km{};
    double extra_loss_db{};   ///< connectors, splices
    double voa_alice_db{};    ///< Alice-side variable attenuator
    double voa_bob_db{};      ///< Bob-side variable attenuator

    bool operator==(const OpticalPath&) const = default;
};

/// Gated avalanche-photodiode single-photon detector.
struct Detector {
    double efficiency{};      ///< quantum efficiency, [0,1]
    double dark_carriers{};   ///< mean dark carriers per gate
    double avalanche_prob{1.0}; ///< avalanche trigger probability per carrier, [0,1]

    bool operator==(const Detector&) const = default;
};

/// Protocol state/basis choice probabilities and the optical misrouting rate.
/// Alice's states are indexed {0, pi/2, pi, 3pi/2}; Bob's bases {0, pi/2}.
struct ProtocolConfig {
    std::array<double, 4> alice_state_probs{0.25, 0.25, 0.25, 0.25};
    std::array<double, 2> bob_basis_probs{0.5, 0.5};
    std::optional<double> sifting_ratio_override; ///< e.g. 0.25 for SARG04-class sifting
    double optical_error_prob{0.01};              ///< chance a detected signal photon lands on the wrong detector

    bool operator==(const ProtocolConfig&) const = default;
};

/// How the source attenuation factor entering the mean photon number is
/// composed. One-way systems set mu with Alice's attenuator only; loop-back
/// (plug-and-play) pulses cross the channel and both attenuators before the
/// quantum-level transmission starts.
enum class MuComposition { OneWay, LoopBack };

enum class EpsilonKind { IdealShannon, LinearEfficiency, Table };

/// Key-length shortening model applied after error correction and privacy
/// amplification.
struct EpsilonStrategy {
    EpsilonKind kind{EpsilonKind::LinearEfficiency};
    double f_ec{1.2}; ///< error-correction inefficiency, >= 1 (LinearEfficiency only)
    std::vector<std::pair<double, double>> table; ///< (p_err, epsilon), p_err strictly increasing

    bool operator==(const EpsilonStrategy&) const = default;
};

/// Numerical knobs of the analytic engine.
struct EngineConfig {
    std::optional<double> mu_override; ///< set mu directly, bypassing the energy ratio
    std::optional<int> n_max;          ///< photon-number truncation bound; adaptive when unset
    double tail_tol{1e-12};            ///< truncation tail tolerance for the adaptive bound
    MuComposition mu_composition{MuComposition::OneWay};
    EpsilonStrategy epsilon;

    bool operator==(const EngineConfig&) const = default;
};

/// Complete parameter set of one QKD link.
struct SystemConfig {
    LaserSource source;
    OpticalPath path;
    Detector detector1;
    Detector detector2;
    ProtocolConfig protocol;
    EngineConfig engine;

    bool operator==(const SystemConfig&) const = default;
};

/// Checks every invariant; throws ConfigError naming the offending field.
void validate(const SystemConfig& config);

/// Single-photon energy h*c/wavelength. Throws std::domain_error for
/// non-positive wavelength.
double photon_energy(double wavelength_m);

/// Linear transmittance 10^(-loss_db/10). Throws std::domain_error for
/// negative loss.
double transfer_ratio(double loss_db);

/// Mean photon number per pulse leaving the source side. Uses the override
/// when set, otherwise the pulse/photon energy ratio times the configured
/// attenuation composition. Throws ConfigError when the result degenerates
/// to zero or a non-finite value.
double mean_photon_number(const SystemConfig& config);

/// Probability for a photon to survive the quantum channel
/// (fiber attenuation plus extra losses; attenuators excluded).
double channel_survival_probability(const SystemConfig& config);

} // namespace qkd
