// chaoslab: run disorder-ensemble sweeps from a config file or a named preset.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chaoslab/config.hpp"
#include "chaoslab/ensemble.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/output.hpp"
#include "chaoslab/presets.hpp"

namespace {

using namespace chaoslab;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot read config file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void log_line(const std::string& msg) { std::cerr << "chaoslab: " << msg << '\n'; }

int execute(const ExperimentConfig& config, bool quiet) {
    const auto issues = check(config);
    if (!issues.empty()) throw ConfigError(issues);
    const auto start = std::chrono::steady_clock::now();
    const RunTiming started{utc_timestamp(), 0.0};

    ResultTable results;
    for (const SweepPlan& plan : to_plans(config)) {
        if (!quiet) {
            log_line("series " + to_string(plan.model.kind) + " L=" + std::to_string(plan.model.num_qubits()) +
                     " l_c=" + std::to_string(plan.model.interaction_range()) + ": " +
                     std::to_string(plan.grid.size()) + " couplings x " + std::to_string(plan.realizations) +
                     " realizations");
        }
        results.append(run_sweep(plan, log_line));
    }
    const RunTiming timing{started.timestamp,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()};
    for (const auto& path : emit(config, results, timing))
        if (!quiet) log_line("wrote " + path.string());
    if (results.failed_tasks > 0)
        log_line(std::to_string(results.failed_tasks) + " of " + std::to_string(results.tasks) + " tasks skipped");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum chaos and entanglement in disordered qubit lattices"};
    app.set_version_flag("--version", chaoslab::version());
    app.require_subcommand(1);

    std::string config_path, out_dir, preset_name;
    unsigned threads = 0;
    bool dump = false, full = false, print_only = false, quiet = false;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "Run the sweeps described by a config file");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--out", out_dir, "Override the output directory");
    run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--dump-eigenvalues", dump, "Write every spectrum to <out>/eigenvalues/");
    run->add_flag("-q,--quiet", quiet, "Only report problems");

    auto* pre = app.add_subcommand("preset", "Run (or print) a ready-made experiment");
    pre->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    pre->add_flag("--full", full, "Use the large reference ensembles instead of desk-scale ones");
    auto* seed_opt = pre->add_option("--seed", seed, "Base seed");
    pre->add_option("--out", out_dir, "Output directory");
    pre->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    pre->add_flag("--print-config", print_only, "Print the preset as a config file and exit");
    pre->add_flag("-q,--quiet", quiet, "Only report problems");

    auto* val = app.add_subcommand("validate", "Check a config file and report every problem");
    val->add_option("config", config_path, "Config file")->required();

    auto* list = app.add_subcommand("list-presets", "List the available presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            for (const auto& p : preset_catalog()) std::cout << p.name << "\t" << p.summary << '\n';
            return 0;
        }
        if (*val) {
            const ExperimentConfig c = parse_config(read_file(config_path));
            std::size_t series = to_plans(c).size();
            std::cout << config_path << ": ok (" << series << " series, " << c.grid().size() << " couplings, "
                      << c.measures.size() << " measures)\n";
            return 0;
        }
        ExperimentConfig config;
        if (*run) {
            config = parse_config(read_file(config_path));
            if (dump) config.dump_eigenvalues = true;
        } else {
            config = preset(preset_name, full);
            if (*seed_opt) config.base_seed = seed;
            if (print_only) {
                std::cout << serialize(config);
                return 0;
            }
        }
        if (!out_dir.empty()) config.directory = out_dir;
        if (threads > 0) config.threads = threads;
        return execute(config, quiet);
    } catch (const ConfigError& e) {
        std::cerr << "chaoslab: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "chaoslab: error: " << e.what() << '\n';
        return 1;
    }
}
