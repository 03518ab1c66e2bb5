#include "qkd/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qkd/errors.hpp"

namespace qkd {

using nlohmann::json;

std::string format_g10(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

SweepSpec::Variable sweep_variable_from_name(const std::string& name) {
    if (name == "channel_length_km") return SweepSpec::Variable::ChannelLengthKm;
    if (name == "mu") return SweepSpec::Variable::Mu;
    if (name == "eta_both") return SweepSpec::Variable::EtaBoth;
    if (name == "dark_carriers_both") return SweepSpec::Variable::DarkCarriersBoth;
    if (name == "e_det") return SweepSpec::Variable::EDet;
    throw ConfigError("unknown sweep variable: " + name +
                      " (expected channel_length_km, mu, eta_both, dark_carriers_both, e_det)");
}

const char* to_string(SweepSpec::Variable variable) {
    switch (variable) {
        case SweepSpec::Variable::ChannelLengthKm: return "channel_length_km";
        case SweepSpec::Variable::Mu: return "mu";
        case SweepSpec::Variable::EtaBoth: return "eta_both";
        case SweepSpec::Variable::DarkCarriersBoth: return "dark_carriers_both";
        case SweepSpec::Variable::EDet: return "e_det";
    }
    return "?";
}

std::vector<double> sweep_values(const SweepSpec& spec) {
    if (spec.steps < 2) {
        throw ConfigError("sweep steps must be >= 2");
    }
    if (!(spec.start < spec.stop)) {
        throw ConfigError("sweep start must be < stop");
    }
    if (spec.logarithmic && !(spec.start > 0.0)) {
        throw ConfigError("logarithmic sweep requires start > 0");
    }
    std::vector<double> values;
    values.reserve(spec.steps);
    if (spec.logarithmic) {
        const double lo = std::log10(spec.start);
        const double hi = std::log10(spec.stop);
        for (int i = 0; i < spec.steps; ++i) {
            values.push_back(std::pow(10.0, lo + (hi - lo) * i / (spec.steps - 1)));
        }
    } else {
        for (int i = 0; i < spec.steps; ++i) {
            values.push_back(spec.start + (spec.stop - spec.start) * i / (spec.steps - 1));
        }
    }
    values.front() = spec.start;
    values.back() = spec.stop;
    return values;
}

SystemConfig apply_sweep_value(const SystemConfig& base, SweepSpec::Variable variable,
                               double value) {
    SystemConfig config = base;
    switch (variable) {
        case SweepSpec::Variable::ChannelLengthKm:
            config.path.channel_length_km = value;
            break;
        case SweepSpec::Variable::Mu:
            config.engine.mu_override = value;
            break;
        case SweepSpec::Variable::EtaBoth:
            config.detector1.efficiency = value;
            config.detector2.efficiency = value;
            break;
        case SweepSpec::Variable::DarkCarriersBoth:
            config.detector1.dark_carriers = value;
            config.detector2.dark_carriers = value;
            break;
        case SweepSpec::Variable::EDet:
            config.protocol.optical_error_prob = value;
            break;
    }
    return config;
}

std::string run_sweep_csv(const SystemConfig& base, const SweepSpec& spec, TreeMode mode) {
    std::ostringstream csv;
    csv << to_string(spec.variable)
        << ",p_sigma,qber,epsilon,sifted_rate_bps,private_rate_bps,status\n";
    for (double value : sweep_values(spec)) {
        csv << format_g10(value) << ',';
        try {
            const SystemConfig config = apply_sweep_value(base, spec.variable, value);
            validate(config);
            const EventTree tree = build_tree(config, mode);
            const SubgroupSums sums = subgroup_sums(tree);
            const double p_sigma = sifted_key_effectiveness(sums);
            if (p_sigma <= 0.0) {
                csv << format_g10(p_sigma) << ",,," << format_g10(0.0) << ",,no-sifted-key\n";
                continue;
            }
            const KeyMetrics metrics = compute_key_metrics(config, tree);
            csv << format_g10(metrics.p_sigma) << ',' << format_g10(metrics.p_err) << ','
                << format_g10(metrics.epsilon) << ',' << format_g10(metrics.sifted_rate_bps) << ','
                << format_g10(metrics.private_rate_bps) << ",ok\n";
        } catch (const ConfigError& err) {
            std::string message = err.what();
            for (char& c : message) {
                if (c == ',' || c == '\n') {
                    c = ';';
                }
            }
            csv << ",,,,,config-error: " << message << '\n';
        }
    }
    return csv.str();
}

CompareReport compare_engines(const SystemConfig& analytic_config,
                              const SystemConfig& simulation_config, std::uint64_t pulses,
                              std::uint64_t seed, TreeMode mode, unsigned threads) {
    CompareReport report;

    const EventTree tree = build_tree(analytic_config, mode);
    const SubgroupSums sums = subgroup_sums(tree);
    report.p_sigma_analytic = sifted_key_effectiveness(sums);
    if (report.p_sigma_analytic > 0.0) {
        report.qber_analytic = bit_error_probability(sums);
    }

    report.simulation = simulate(simulation_config, pulses, seed, threads);
    report.se = estimate_standard_errors(report.simulation);

    if (report.p_sigma_analytic == 0.0 && report.simulation.sifted_bits() == 0) {
        report.vacuous = true;
        report.pass = true;
        return report;
    }

    bool ok = std::abs(report.p_sigma_analytic - report.simulation.p_sigma_hat()) <=
              3.0 * report.se.p_sigma;
    // The QBER leg needs sifted bits on both sides; otherwise only the
    // p_sigma check is meaningful.
    if (report.qber_analytic && report.se.qber) {
        report.qber_checked = true;
        ok = ok && std::abs(*report.qber_analytic - *report.simulation.qber_hat()) <=
                       3.0 * *report.se.qber;
    }
    report.pass = ok;
    return report;
}

CompareReport run_compare(const SystemConfig& config, std::uint64_t pulses, std::uint64_t seed,
                          TreeMode mode, unsigned threads) {
    return compare_engines(config, config, pulses, seed, mode, threads);
}

json metrics_to_json(const KeyMetrics& metrics) {
    return json{{"p_sigma", metrics.p_sigma},
                {"p_err_dark", metrics.subgroups.err_dark},
                {"p_bit_dark", metrics.subgroups.bit_dark},
                {"p_err_real", metrics.subgroups.err_real},
                {"p_bit_real", metrics.subgroups.bit_real},
                {"qber", metrics.p_err},
                {"epsilon", metrics.epsilon},
                {"sifted_rate_bps", metrics.sifted_rate_bps},
                {"private_rate_bps", metrics.private_rate_bps}};
}

json simulation_to_json(const SimulationResult& result) {
    json doc{{"pulses", result.pulses},
             {"seed", result.seed},
             {"counts",
              {{"err_dark", result.err_dark},
               {"bit_dark", result.bit_dark},
               {"err_real", result.err_real},
               {"bit_real", result.bit_real},
               {"no_detection", result.discard_no_detection},
               {"double_detection", result.discard_double},
               {"wrong_basis", result.discard_wrong_basis}}},
             {"sifted_bits", result.sifted_bits()},
             {"error_bits", result.error_bits()},
             {"p_sigma_hat", result.p_sigma_hat()}};
    const StandardErrors se = estimate_standard_errors(result);
    doc["se_p_sigma"] = se.p_sigma;
    if (const auto q = result.qber_hat()) {
        doc["qber_hat"] = *q;
        doc["se_qber"] = *se.qber;
    } else {
        doc["qber_hat"] = nullptr;
        doc["se_qber"] = nullptr;
    }
    return doc;
}

json compare_to_json(const CompareReport& report) {
    json doc;
    doc["analytic"]["p_sigma"] = report.p_sigma_analytic;
    doc["analytic"]["qber"] =
        report.qber_analytic ? json(*report.qber_analytic) : json(nullptr);
    doc["simulation"] = simulation_to_json(report.simulation);
    doc["criterion"] = "|analytic - simulated| <= 3 * standard error";
    doc["qber_checked"] = report.qber_checked;
    doc["vacuous"] = report.vacuous;
    doc["pass"] = report.pass;
    return doc;
}

} // namespace qkd
