#include "narrevo/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

namespace narrevo {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string aggregate_csv(const AggregateResult& result) {
    std::ostringstream out;
    out << kAggregateHeader << '\n';
    for (const auto& cell : result.cells) {
        const SimParams& p = cell.cell.params;
        for (auto kind : kAllKinds) {
            const auto& agg = cell.kinds[kind_code(kind)];
            out << to_string(p.law) << ',' << format_number(p.q) << ',' << format_number(p.delta) << ','
                << format_number(p.menu.true_p) << ',' << format_number(p.menu.rho1) << ','
                << format_number(p.menu.rho2) << ',' << p.tau << ',' << p.n << ',' << result.reps << ','
                << to_string(kind) << ',' << format_number(agg.mean_share) << ',' << format_number(agg.sd_share)
                << ',' << format_number(agg.mean_mse) << ',' << format_number(agg.sd_mse) << '\n';
        }
    }
    return out.str();
}

std::string timeseries_csv(const ExperimentRun& run) {
    std::ostringstream out;
    out << kTimeseriesHeader << '\n';
    const auto reps = static_cast<std::size_t>(run.aggregate.reps);
    for (std::size_t c = 0; c < run.replications.size(); ++c) {
        for (std::size_t r = 0; r < run.replications[c].size(); ++r) {
            const std::size_t global_rep = c * reps + r;
            for (const auto& epoch : run.replications[c][r].epoch_series) {
                for (auto kind : kAllKinds) {
                    const int k = kind_code(kind);
                    out << global_rep << ',' << epoch.t << ',' << to_string(kind) << ','
                        << format_number(epoch.stats.shares[k]) << ',';
                    if (epoch.stats.mean_error[k]) out << format_number(*epoch.stats.mean_error[k]);
                    out << ',' << format_number(epoch.stats.psi) << '\n';
                }
            }
        }
    }
    return out.str();
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

} // namespace

nlohmann::json manifest_json(const ExperimentConfig& config, const AggregateResult& result) {
    nlohmann::json m;
    m["artifact"] = std::string(kArtifactName);
    m["version"] = std::string(kArtifactVersion);
    m["created_utc"] = utc_timestamp();
    m["master_seed"] = result.master_seed;
    m["seed_scheme"] =
        "seed(cell, rep) = splitmix64(seed_base(cell) ^ splitmix64(~rep)); "
        "seed_base(cell) = splitmix64(splitmix64(master_seed) ^ splitmix64(cell))";
    m["config"] = config_to_json(config);
    m["cells"] = nlohmann::json::array();
    for (const auto& agg : result.cells) {
        const Cell& cell = agg.cell;
        nlohmann::json c;
        c["index"] = cell.index;
        c["law"] = std::string(to_string(cell.law));
        c["q"] = cell.q;
        c["override_index"] = cell.override_index;
        c["seed_base"] = cell_seed_base(result.master_seed, cell.index);
        c["rep_offset"] = cell.index * static_cast<std::size_t>(result.reps);
        m["cells"].push_back(c);
    }
    return m;
}

void write_outputs(const ExperimentRun& run, const ExperimentConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
    write_file(config.output_dir / "aggregate.csv", aggregate_csv(run.aggregate));
    if (config.emit_timeseries) write_file(config.output_dir / "timeseries.csv", timeseries_csv(run));
    write_file(config.output_dir / "manifest.json", manifest_json(config, run.aggregate).dump(2) + "\n");
}

} // namespace narrevo
