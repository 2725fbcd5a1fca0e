// Experiment configuration, seed derivation, parallel replication runs and
// cross-replication aggregation.
#ifndef NARREVO_EXPERIMENT_HPP
#define NARREVO_EXPERIMENT_HPP

#include "narrevo/core.hpp"
#include "narrevo/engine.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace narrevo {

inline constexpr std::string_view kArtifactName = "narrevo";
inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// Parameter changes applied on top of the base parameters for one
/// comparative-statics run. An empty override set is the benchmark.
struct Overrides {
    std::optional<double> p;
    std::optional<double> rho2;
    std::optional<int> tau;
    std::optional<int> n;
    std::optional<double> delta;

    SimParams apply(SimParams base) const;
    friend bool operator==(const Overrides&, const Overrides&) = default;
};

struct ExperimentConfig {
    SimParams base = benchmark_params();
    std::vector<double> q_grid{0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<LawOfMotion> laws{kAllLaws.begin(), kAllLaws.end()};
    int reps = 100;
    std::uint64_t master_seed = 20240901;
    std::vector<Overrides> overrides{Overrides{}};
    bool emit_timeseries = false;
    std::filesystem::path output_dir = "results";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Reads a JSON config. Missing keys take benchmark defaults; unknown keys
/// are rejected. A manifest written by write_outputs is also accepted, in
/// which case its config echo is used. Throws ValidationError (with
/// line/column for syntax errors) or IoError when the file cannot be read.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One (law, override set, q) combination.
struct Cell {
    std::size_t index = 0;
    LawOfMotion law = LawOfMotion::Independent;
    std::size_t override_index = 0;
    double q = 0.0;
    SimParams params;
};

/// Cells ordered by law code, override index, then ascending q.
std::vector<Cell> expand_cells(const ExperimentConfig& config);

/// Throws ValidationError naming the failing cell.
void validate_config(const ExperimentConfig& config);

/// Seed base of a cell: splitmix64(splitmix64(master) ^ splitmix64(cell)).
std::uint64_t cell_seed_base(std::uint64_t master_seed, std::size_t cell_index) noexcept;

/// Replication seed: splitmix64(cell_seed_base ^ splitmix64(~rep)).
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t cell_index, std::size_t rep_index) noexcept;

struct KindAggregate {
    double mean_share = 0.0;
    double sd_share = 0.0;
    /// NaN when the kind was absent at the end of every replication.
    double mean_mse = 0.0;
    double sd_mse = 0.0;
};

struct CellAggregate {
    Cell cell;
    std::array<KindAggregate, kKindCount> kinds{};
};

struct AggregateResult {
    std::vector<CellAggregate> cells;
    int reps = 0;
    std::uint64_t master_seed = 0;
};

/// Means and sample standard deviations (0 for a single replication).
/// Independent of the order of `reps`.
std::array<KindAggregate, kKindCount> aggregate_replications(std::span<const ReplicationResult> reps);

struct ExperimentRun {
    AggregateResult aggregate;
    /// Indexed by cell, then replication.
    std::vector<std::vector<ReplicationResult>> replications;
};

/// Worker count from `requested`, else NARREVO_WORKERS, else the hardware.
unsigned resolve_workers(std::optional<unsigned> requested);

/// Runs every replication of every cell on `workers` threads. Epoch series
/// are kept only when the config asks for timeseries output.
ExperimentRun run_experiment(const ExperimentConfig& config, unsigned workers = 1);

} // namespace narrevo

#endif // NARREVO_EXPERIMENT_HPP
