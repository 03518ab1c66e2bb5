#include "qkd/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qkd/errors.hpp"

namespace qkd {

namespace {

using nlohmann::json;

class Section {
  public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ConfigError(path_ + " must be a JSON object");
        }
    }

    ~Section() noexcept(false) {
        if (std::uncaught_exceptions() == 0) {
            reject_unknown();
        }
    }

    bool has(const char* key) const { return node_.contains(key); }

    double number(const char* key) {
        const json& v = fetch(key);
        if (!v.is_number()) {
            throw ConfigError(path_ + "." + key + " must be a number");
        }
        return v.get<double>();
    }

    double number_or(const char* key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::optional<double> optional_number(const char* key) {
        if (!has(key)) {
            return std::nullopt;
        }
        return number(key);
    }

    std::string string(const char* key) {
        const json& v = fetch(key);
        if (!v.is_string()) {
            throw ConfigError(path_ + "." + key + " must be a string");
        }
        return v.get<std::string>();
    }

    template <std::size_t N>
    std::array<double, N> number_array(const char* key) {
        const json& v = fetch(key);
        if (!v.is_array() || v.size() != N) {
            throw ConfigError(path_ + "." + key + " must be an array of " + std::to_string(N) +
                              " numbers");
        }
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            if (!v[i].is_number()) {
                throw ConfigError(path_ + "." + key + " must contain only numbers");
            }
            out[i] = v[i].get<double>();
        }
        return out;
    }

    const json* subsection(const char* key) {
        if (!has(key)) {
            return nullptr;
        }
        seen_.insert(key);
        return &node_.at(key);
    }

    const std::string& path() const { return path_; }

  private:
    const json& fetch(const char* key) {
        if (!node_.contains(key)) {
            throw ConfigError(path_ + "." + key + " is required");
        }
        seen_.insert(key);
        return node_.at(key);
    }

    void reject_unknown() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError("unknown key " + path_ + "." + key);
            }
        }
    }

    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

Detector parse_detector(const json& node, const std::string& path) {
    Section s(node, path);
    Detector d;
    d.efficiency = s.number("efficiency");
    d.dark_carriers = s.number("dark_carriers");
    d.avalanche_prob = s.number_or("avalanche_prob", 1.0);
    return d;
}

EpsilonStrategy parse_epsilon(const json& node, const std::string& path) {
    Section s(node, path);
    EpsilonStrategy eps;
    const std::string kind = s.string("strategy");
    if (kind == "ideal-shannon") {
        eps.kind = EpsilonKind::IdealShannon;
    } else if (kind == "linear-efficiency") {
        eps.kind = EpsilonKind::LinearEfficiency;
        eps.f_ec = s.number_or("f_ec", 1.2);
    } else if (kind == "table") {
        eps.kind = EpsilonKind::Table;
        const json* pts = s.subsection("points");
        if (pts == nullptr || !pts->is_array() || pts->empty()) {
            throw ConfigError(path + ".points must be a non-empty array of [p_err, epsilon] pairs");
        }
        for (const json& p : *pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw ConfigError(path + ".points entries must be [p_err, epsilon] number pairs");
            }
            eps.table.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    } else {
        throw ConfigError(path + ".strategy must be one of ideal-shannon, linear-efficiency, table");
    }
    return eps;
}

} // namespace

SystemConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("malformed JSON: ") + err.what());
    }

    SystemConfig config;
    {
        Section root(doc, "config");

        {
            const json* node = root.subsection("source");
            if (node == nullptr) {
                throw ConfigError("config.source is required");
            }
            Section s(*node, "source");
            config.source.pulse_energy_j = s.number("pulse_energy_j");
            config.source.wavelength_m = s.number("wavelength_m");
            config.source.pulse_rate_hz = s.number("pulse_rate_hz");
        }
        {
            const json* node = root.subsection("path");
            if (node == nullptr) {
                throw ConfigError("config.path is required");
            }
            Section s(*node, "path");
            config.path.channel_atten_db_per_km = s.number("channel_atten_db_per_km");
            config.path.channel_length_km = s.number("channel_length_km");
            config.path.extra_loss_db = s.number_or("extra_loss_db", 0.0);
            config.path.voa_alice_db = s.number_or("voa_alice_db", 0.0);
            config.path.voa_bob_db = s.number_or("voa_bob_db", 0.0);
        }
        {
            const json* node = root.subsection("detector1");
            if (node == nullptr) {
                throw ConfigError("config.detector1 is required");
            }
            config.detector1 = parse_detector(*node, "detector1");
        }
        {
            const json* node = root.subsection("detector2");
            if (node == nullptr) {
                throw ConfigError("config.detector2 is required");
            }
            config.detector2 = parse_detector(*node, "detector2");
        }
        if (const json* node = root.subsection("protocol")) {
            Section s(*node, "protocol");
            if (s.has("alice_state_probs")) {
                config.protocol.alice_state_probs = s.number_array<4>("alice_state_probs");
            }
            if (s.has("bob_basis_probs")) {
                config.protocol.bob_basis_probs = s.number_array<2>("bob_basis_probs");
            }
            config.protocol.sifting_ratio_override = s.optional_number("sifting_ratio_override");
            config.protocol.optical_error_prob = s.number_or("optical_error_prob", 0.01);
        }
        if (const json* node = root.subsection("engine")) {
            Section s(*node, "engine");
            config.engine.mu_override = s.optional_number("mu_override");
            if (s.has("n_max")) {
                const double raw = s.number("n_max");
                if (raw != static_cast<int>(raw)) {
                    throw ConfigError("engine.n_max must be an integer");
                }
                config.engine.n_max = static_cast<int>(raw);
            }
            config.engine.tail_tol = s.number_or("tail_tol", 1e-12);
            if (s.has("mu_composition")) {
                const std::string mode = s.string("mu_composition");
                if (mode == "one-way") {
                    config.engine.mu_composition = MuComposition::OneWay;
                } else if (mode == "loop-back") {
                    config.engine.mu_composition = MuComposition::LoopBack;
                } else {
                    throw ConfigError("engine.mu_composition must be one-way or loop-back");
                }
            }
            if (const json* eps = s.subsection("epsilon")) {
                config.engine.epsilon = parse_epsilon(*eps, "engine.epsilon");
            }
        }
    }

    validate(config);
    return config;
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

nlohmann::json config_to_json(const SystemConfig& config) {
    json doc;
    doc["source"] = {{"pulse_energy_j", config.source.pulse_energy_j},
                     {"wavelength_m", config.source.wavelength_m},
                     {"pulse_rate_hz", config.source.pulse_rate_hz}};
    doc["path"] = {{"channel_atten_db_per_km", config.path.channel_atten_db_per_km},
                   {"channel_length_km", config.path.channel_length_km},
                   {"extra_loss_db", config.path.extra_loss_db},
                   {"voa_alice_db", config.path.voa_alice_db},
                   {"voa_bob_db", config.path.voa_bob_db}};
    for (const auto& [key, det] :
         {std::pair<const char*, const Detector*>{"detector1", &config.detector1},
          std::pair<const char*, const Detector*>{"detector2", &config.detector2}}) {
        doc[key] = {{"efficiency", det->efficiency},
                    {"dark_carriers", det->dark_carriers},
                    {"avalanche_prob", det->avalanche_prob}};
    }
    doc["protocol"] = {{"alice_state_probs", config.protocol.alice_state_probs},
                       {"bob_basis_probs", config.protocol.bob_basis_probs},
                       {"optical_error_prob", config.protocol.optical_error_prob}};
    if (config.protocol.sifting_ratio_override) {
        doc["protocol"]["sifting_ratio_override"] = *config.protocol.sifting_ratio_override;
    }
    json engine;
    if (config.engine.mu_override) {
        engine["mu_override"] = *config.engine.mu_override;
    }
    if (config.engine.n_max) {
        engine["n_max"] = *config.engine.n_max;
    }
    engine["tail_tol"] = config.engine.tail_tol;
    engine["mu_composition"] =
        config.engine.mu_composition == MuComposition::OneWay ? "one-way" : "loop-back";
    json eps;
    switch (config.engine.epsilon.kind) {
        case EpsilonKind::IdealShannon:
            eps["strategy"] = "ideal-shannon";
            break;
        case EpsilonKind::LinearEfficiency:
            eps["strategy"] = "linear-efficiency";
            eps["f_ec"] = config.engine.epsilon.f_ec;
            break;
        case EpsilonKind::Table: {
            eps["strategy"] = "table";
            json pts = json::array();
            for (const auto& [x, y] : config.engine.epsilon.table) {
                pts.push_back({x, y});
            }
            eps["points"] = pts;
            break;
        }
    }
    engine["epsilon"] = eps;
    doc["engine"] = engine;
    return doc;
}

std::string serialize_config(const SystemConfig& config) {
    return config_to_json(config).dump(2);
}

} // namespace qkd
