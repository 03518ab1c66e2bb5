#include "qkd/cli.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qkd/config_io.hpp"
#include "qkd/errors.hpp"
#include "qkd/event_tree.hpp"
#include "qkd/key_metrics.hpp"
#include "qkd/monte_carlo.hpp"
#include "qkd/photon_statistics.hpp"
#include "qkd/report.hpp"
#include "qkd/version.hpp"

namespace qkd {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json report_skeleton(const SystemConfig& config) {
    json doc;
    doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    doc["timestamp"] = utc_timestamp();
    doc["config"] = config_to_json(config);
    return doc;
}

void write_output(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file: " + output_path);
    }
    out << text;
}

TreeMode parse_mode(const std::string& mode) {
    if (mode == "exact") {
        return TreeMode::Exact;
    }
    if (mode == "lumped") {
        return TreeMode::Lumped;
    }
    throw ConfigError("mode must be exact or lumped");
}

json photon_statistics_summary(double mu) {
    const ThreeBranch branch = lumped_three_branch(mu);
    return json{{"mu", mu},
                {"p0", branch.p0},
                {"p1", branch.p1},
                {"p2plus", branch.p2plus},
                {"p2_exact", poisson_pn(mu, 2)}};
}

int run_evaluate(const std::string& config_path, const std::string& mode_name,
                 const std::string& output_path, const std::string& dump_path) {
    const SystemConfig config = load_config_file(config_path);
    const TreeMode mode = parse_mode(mode_name);
    const EventTree tree = build_tree(config, mode);

    if (!dump_path.empty()) {
        std::ofstream out(dump_path, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot open dump file: " + dump_path);
        }
        dump_tree(tree, out);
    }

    json doc = report_skeleton(config);
    doc["mode"] = mode_name;
    doc["photon_statistics"] = photon_statistics_summary(tree.mu);
    doc["tree"] = {{"classified_leaves", classified_leaf_count(tree)},
                   {"tail_discard", tree.tail_discard},
                   {"p_qc", tree.p_qc},
                   {"p_cb", tree.p_cb},
                   {"config_digest", tree.config_digest}};
    const KeyMetrics metrics = compute_key_metrics(config, tree); // throws NoSiftedKeyError
    doc["metrics"] = metrics_to_json(metrics);
    write_output(doc.dump(2), output_path);
    return 0;
}

int run_sweep(const std::string& config_path, const SweepSpec& spec, const std::string& mode_name,
              const std::string& output_path) {
    const SystemConfig config = load_config_file(config_path);
    write_output(run_sweep_csv(config, spec, parse_mode(mode_name)), output_path);
    return 0;
}

int run_simulate(const std::string& config_path, std::uint64_t pulses, std::uint64_t seed,
                 unsigned threads, const std::string& output_path) {
    const SystemConfig config = load_config_file(config_path);
    json doc = report_skeleton(config);
    doc["simulation"] = simulation_to_json(simulate(config, pulses, seed, threads));
    write_output(doc.dump(2), output_path);
    return 0;
}

int run_compare_cmd(const std::string& config_path, std::uint64_t pulses, std::uint64_t seed,
                    const std::string& mode_name, unsigned threads,
                    const std::string& output_path) {
    const SystemConfig config = load_config_file(config_path);
    const CompareReport report =
        run_compare(config, pulses, seed, parse_mode(mode_name), threads);
    json doc = report_skeleton(config);
    doc["mode"] = mode_name;
    doc["compare"] = compare_to_json(report);
    write_output(doc.dump(2), output_path);
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"QKD link-budget engine: event-tree evaluation, parameter sweeps and a "
                 "pulse-by-pulse cross-check simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string mode_name = "exact";
    std::string dump_path;
    std::uint64_t pulses = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    std::string sweep_var;
    SweepSpec spec;

    CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate the event tree and key metrics");
    evaluate->add_option("--config", config_path, "JSON config file")->required();
    evaluate->add_option("--mode", mode_name, "exact|lumped")->capture_default_str();
    evaluate->add_option("--output", output_path, "output file (default stdout)");
    evaluate->add_option("--dump-tree", dump_path, "write the leaf-by-leaf tree dump to a file");

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one variable, emit CSV");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--var", sweep_var,
                      "channel_length_km|mu|eta_both|dark_carriers_both|e_det")
        ->required();
    sweep->add_option("--start", spec.start, "first value")->required();
    sweep->add_option("--stop", spec.stop, "last value")->required();
    sweep->add_option("--steps", spec.steps, "number of points (>= 2)")->required();
    sweep->add_flag("--log", spec.logarithmic, "logarithmic spacing");
    sweep->add_option("--mode", mode_name, "exact|lumped")->capture_default_str();
    sweep->add_option("--output", output_path, "output file (default stdout)");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Run the pulse simulator");
    simulate_cmd->add_option("--config", config_path, "JSON config file")->required();
    simulate_cmd->add_option("--pulses", pulses, "number of pulses")->required();
    simulate_cmd->add_option("--seed", seed, "random seed")->required();
    simulate_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    simulate_cmd->add_option("--output", output_path, "output file (default stdout)");

    CLI::App* compare = app.add_subcommand("compare", "Cross-check analytic vs simulated");
    compare->add_option("--config", config_path, "JSON config file")->required();
    compare->add_option("--pulses", pulses, "number of pulses")->required();
    compare->add_option("--seed", seed, "random seed")->required();
    compare->add_option("--threads", threads, "worker threads (0 = hardware)");
    compare->add_option("--mode", mode_name, "exact|lumped")->capture_default_str();
    compare->add_option("--output", output_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        app.exit(e);
        return 1;
    }

    try {
        if (evaluate->parsed()) {
            return run_evaluate(config_path, mode_name, output_path, dump_path);
        }
        if (sweep->parsed()) {
            spec.variable = sweep_variable_from_name(sweep_var);
            return run_sweep(config_path, spec, mode_name, output_path);
        }
        if (simulate_cmd->parsed()) {
            return run_simulate(config_path, pulses, seed, threads, output_path);
        }
        if (compare->parsed()) {
            return run_compare_cmd(config_path, pulses, seed, mode_name, threads, output_path);
        }
    } catch (const NoSiftedKeyError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace qkd
