// CSV and manifest writers for experiment results.
#ifndef NARREVO_OUTPUT_HPP
#define NARREVO_OUTPUT_HPP

#include "narrevo/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace narrevo {

inline constexpr std::string_view kAggregateHeader =
    "law,q,delta,p,rho1,rho2,tau,n,reps,kind,mean_share,sd_share,mean_mse,sd_mse";
inline constexpr std::string_view kTimeseriesHeader = "rep,t,kind,share,mean_error,psi";

/// Shortest round-trip text of at most 12 significant digits, '.' decimal
/// separator, "nan" for NaN. Locale independent.
std::string format_number(double value);

std::string aggregate_csv(const AggregateResult& result);

/// One row per (replication, recorded epoch, kind). The rep column is the
/// global replication index cell * reps + rep; the manifest lists each
/// cell's offset. An absent kind has an empty mean_error field.
std::string timeseries_csv(const ExperimentRun& run);

nlohmann::json manifest_json(const ExperimentConfig& config, const AggregateResult& result);

/// Writes aggregate.csv, manifest.json and, when requested,
/// timeseries.csv into config.output_dir. Throws IoError with the path.
void write_outputs(const ExperimentRun& run, const ExperimentConfig& config);

} // namespace narrevo

#endif // NARREVO_OUTPUT_HPP
