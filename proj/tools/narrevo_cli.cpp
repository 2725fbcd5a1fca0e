// narrevo: run narrative-selection experiments from a JSON config.
//
//   narrevo simulate --config <path> [--out <dir>] [--seed <u64>] [--reps <k>] [--timeseries] [--workers <k>]
//   narrevo validate --config <path>
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include "narrevo/experiment.hpp"
#include "narrevo/output.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evolutionary simulation of narrative selection"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int reps = 0;
    bool timeseries = false;
    unsigned workers = 0;

    auto* simulate = app.add_subcommand("simulate", "Run every cell of an experiment and write results");
    simulate->add_option("--config", config_path, "Experiment config (JSON) or a previous manifest.json")
        ->required();
    auto* out_opt = simulate->add_option("--out", out_dir, "Output directory");
    auto* seed_opt = simulate->add_option("--seed", seed, "Master seed");
    auto* reps_opt = simulate->add_option("--reps", reps, "Replications per cell")->check(CLI::PositiveNumber);
    simulate->add_flag("--timeseries", timeseries, "Also write timeseries.csv");
    auto* workers_opt = simulate->add_option("--workers", workers, "Worker threads (default: $NARREVO_WORKERS)")
                            ->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "Parse and validate a config without running it");
    validate->add_option("--config", config_path, "Experiment config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    narrevo::ExperimentConfig config;
    try {
        config = narrevo::parse_config(config_path);
        if (*out_opt) config.output_dir = out_dir;
        if (*seed_opt) config.master_seed = seed;
        if (*reps_opt) config.reps = reps;
        if (timeseries) config.emit_timeseries = true;
        narrevo::validate_config(config);
    } catch (const narrevo::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const narrevo::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitValidation;
    }

    const auto cells = narrevo::expand_cells(config);
    if (validate->parsed()) {
        std::cout << "ok: " << cells.size() << " cells x " << config.reps << " replications\n";
        return 0;
    }

    const unsigned n_workers =
        narrevo::resolve_workers(*workers_opt ? std::optional<unsigned>(workers) : std::nullopt);
    std::cerr << "running " << cells.size() << " cells x " << config.reps << " replications on " << n_workers
              << " worker(s)\n";
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto run = narrevo::run_experiment(config, n_workers);
        narrevo::write_outputs(run, config);
    } catch (const narrevo::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const narrevo::ValidationError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitValidation;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "wrote " << config.output_dir.string() << " in " << elapsed.count() << " s\n";
    return 0;
}
