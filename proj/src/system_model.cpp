#include "qkd/system_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qkd/errors.hpp"

namespace qkd {

namespace {

constexpr double kPlanck = 6.62607015e-34;   // J*s, exact SI
constexpr double kLightSpeed = 299792458.0;  // m/s, exact SI

void check_probability(double value, const char* field) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError(std::string(field) + " must lie in [0,1], got " + std::to_string(value));
    }
}

void check_nonnegative(double value, const char* field) {
    if (!(value >= 0.0)) {
        throw ConfigError(std::string(field) + " must be >= 0, got " + std::to_string(value));
    }
}

void check_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(std::string(field) + " must be a positive finite number, got " +
                          std::to_string(value));
    }
}

void check_detector(const Detector& d, const char* prefix) {
    check_probability(d.efficiency, (std::string(prefix) + ".efficiency").c_str());
    check_nonnegative(d.dark_carriers, (std::string(prefix) + ".dark_carriers").c_str());
    check_probability(d.avalanche_prob, (std::string(prefix) + ".avalanche_prob").c_str());
}

template <std::size_t N>
void check_prob_vector(const std::array<double, N>& probs, const char* field) {
    double sum = 0.0;
    for (double p : probs) {
        check_probability(p, field);
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError(std::string(field) + " must sum to 1 within 1e-12, got sum " +
                          std::to_string(sum));
    }
}

} // namespace

void validate(const SystemConfig& config) {
    check_positive(config.source.pulse_energy_j, "source.pulse_energy_j");
    check_positive(config.source.wavelength_m, "source.wavelength_m");
    check_positive(config.source.pulse_rate_hz, "source.pulse_rate_hz");

    check_nonnegative(config.path.channel_atten_db_per_km, "path.channel_atten_db_per_km");
    check_nonnegative(config.path.channel_length_km, "path.channel_length_km");
    check_nonnegative(config.path.extra_loss_db, "path.extra_loss_db");
    check_nonnegative(config.path.voa_alice_db, "path.voa_alice_db");
    check_nonnegative(config.path.voa_bob_db, "path.voa_bob_db");

    check_detector(config.detector1, "detector1");
    check_detector(config.detector2, "detector2");

    check_prob_vector(config.protocol.alice_state_probs, "protocol.alice_state_probs");
    check_prob_vector(config.protocol.bob_basis_probs, "protocol.bob_basis_probs");
    if (config.protocol.sifting_ratio_override) {
        check_probability(*config.protocol.sifting_ratio_override,
                          "protocol.sifting_ratio_override");
    }
    if (!(config.protocol.optical_error_prob >= 0.0 && config.protocol.optical_error_prob <= 0.5)) {
        throw ConfigError("protocol.optical_error_prob must lie in [0,0.5], got " +
                          std::to_string(config.protocol.optical_error_prob));
    }

    if (config.engine.mu_override) {
        check_positive(*config.engine.mu_override, "engine.mu_override");
    }
    if (config.engine.n_max && *config.engine.n_max < 0) {
        throw ConfigError("engine.n_max must be >= 0, got " +
                          std::to_string(*config.engine.n_max));
    }
    if (!(config.engine.tail_tol > 0.0 && config.engine.tail_tol < 1.0)) {
        throw ConfigError("engine.tail_tol must lie in (0,1), got " +
                          std::to_string(config.engine.tail_tol));
    }

    const EpsilonStrategy& eps = config.engine.epsilon;
    if (eps.kind == EpsilonKind::LinearEfficiency && !(eps.f_ec >= 1.0)) {
        throw ConfigError("engine.epsilon.f_ec must be >= 1, got " + std::to_string(eps.f_ec));
    }
    if (eps.kind == EpsilonKind::Table) {
        if (eps.table.empty()) {
            throw ConfigError("engine.epsilon.points must be non-empty");
        }
        double prev = -1.0;
        for (const auto& [x, y] : eps.table) {
            if (!(x > prev)) {
                throw ConfigError("engine.epsilon.points must have strictly increasing p_err");
            }
            check_probability(y, "engine.epsilon.points epsilon value");
            prev = x;
        }
    }
}

double photon_energy(double wavelength_m) {
    if (!(wavelength_m > 0.0)) {
        throw std::domain_error("wavelength must be > 0");
    }
    return kPlanck * kLightSpeed / wavelength_m;
}

double transfer_ratio(double loss_db) {
    if (!(loss_db >= 0.0)) {
        throw std::domain_error("loss must be >= 0 dB");
    }
    return std::pow(10.0, -loss_db / 10.0);
}

double mean_photon_number(const SystemConfig& config) {
    if (config.engine.mu_override) {
        return *config.engine.mu_override;
    }
    const double channel_db = config.path.channel_atten_db_per_km * config.path.channel_length_km +
                              config.path.extra_loss_db;
    double attenuation = transfer_ratio(config.path.voa_alice_db);
    if (config.engine.mu_composition == MuComposition::LoopBack) {
        attenuation *= transfer_ratio(config.path.voa_bob_db) * transfer_ratio(channel_db);
    }
    const double mu =
        config.source.pulse_energy_j / photon_energy(config.source.wavelength_m) * attenuation;
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ConfigError("derived mean photon number is degenerate (" + std::to_string(mu) +
                          "); check source energy and attenuation settings");
    }
    return mu;
}

double channel_survival_probability(const SystemConfig& config) {
    return transfer_ratio(config.path.channel_atten_db_per_km * config.path.channel_length_km +
                          config.path.extra_loss_db);
}

} // namespace qkd
