#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "qkd/event_tree.hpp"
#include "qkd/key_metrics.hpp"
#include "qkd/monte_carlo.hpp"
#include "qkd/system_model.hpp"

namespace qkd {

/// One swept variable applied to a base configuration.
struct SweepSpec {
    enum class Variable { ChannelLengthKm, Mu, EtaBoth, DarkCarriersBoth, EDet };

    Variable variable{Variable::ChannelLengthKm};
    double start{};
    double stop{};
    int steps{2};
    bool logarithmic{false};
};

SweepSpec::Variable sweep_variable_from_name(const std::string& name);
const char* to_string(SweepSpec::Variable variable);

/// Grid values for a spec: linear or logarithmic, inclusive of both ends.
/// Throws ConfigError on an invalid spec.
std::vector<double> sweep_values(const SweepSpec& spec);

/// The base config with the swept variable set to value.
SystemConfig apply_sweep_value(const SystemConfig& base, SweepSpec::Variable variable,
                               double value);

/// CSV with one row per sweep point, columns: value, p_sigma, qber, epsilon,
/// sifted_rate_bps, private_rate_bps, status. Invalid points carry an error
/// status and empty metric cells; the run continues. Output is byte-stable:
/// 10 significant digits, C locale.
std::string run_sweep_csv(const SystemConfig& base, const SweepSpec& spec, TreeMode mode);

/// Analytic-vs-simulation cross check at the 3-standard-error level.
struct CompareReport {
    double p_sigma_analytic{};
    std::optional<double> qber_analytic;
    SimulationResult simulation;
    StandardErrors se;
    bool qber_checked{};
    bool vacuous{}; ///< both engines produced no sifted key
    bool pass{};
};

/// Runs both engines on the same configuration.
CompareReport run_compare(const SystemConfig& config, std::uint64_t pulses, std::uint64_t seed,
                          TreeMode mode = TreeMode::Exact, unsigned threads = 0);

/// Cross check with separate configurations per engine; the single-config
/// overload forwards here. Exposed so tests can inject a deliberate mismatch.
CompareReport compare_engines(const SystemConfig& analytic_config,
                              const SystemConfig& simulation_config, std::uint64_t pulses,
                              std::uint64_t seed, TreeMode mode = TreeMode::Exact,
                              unsigned threads = 0);

nlohmann::json metrics_to_json(const KeyMetrics& metrics);
nlohmann::json simulation_to_json(const SimulationResult& result);
nlohmann::json compare_to_json(const CompareReport& report);

/// Fixed-format float: 10 significant digits, locale independent.
std::string format_g10(double value);

} // namespace qkd
