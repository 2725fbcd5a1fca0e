// Per-period simulation loop and the single-replication runner.
#ifndef NARREVO_ENGINE_HPP
#define NARREVO_ENGINE_HPP

#include "narrevo/belief.hpp"
#include "narrevo/core.hpp"
#include "narrevo/random.hpp"
#include "narrevo/selection.hpp"
#include "narrevo/world.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace narrevo {

class SignalExhausted : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Where agents' signals come from: the stochastic channel, or fixed
/// per-agent sequences (indexed by agent, then period - 1) for tests.
class SignalSource {
public:
    static SignalSource channel() { return SignalSource{}; }
    static SignalSource injected(std::vector<std::vector<SignalLabel>> per_agent);

    SignalLabel next(std::size_t agent, int t, StateLabel state, double p, RandomStream& stream) const;
    bool is_injected() const noexcept { return injected_.has_value(); }

private:
    std::optional<std::vector<std::vector<SignalLabel>>> injected_;
};

/// Uniform draw from the 4-simplex: five unit exponentials, normalized.
/// Consumes five variates.
std::array<double, kKindCount> draw_simplex_shares(RandomStream& stream);

/// Largest-remainder apportionment of n seats; remainder ties go to the
/// lower kind code.
std::array<int, kKindCount> apportion(const std::array<double, kKindCount>& shares, int n);

/// Random initial composition, kinds laid out in contiguous blocks by code,
/// every belief at mu0.
std::vector<Agent> init_population(const SimParams& params, RandomStream& stream);

double mean_belief(std::span<const Agent> agents) noexcept;

struct StepRecord {
    StateLabel state = StateLabel::A;
    /// Average prior belief at the start of the period (the conformist target).
    double avg_prior = 0.0;
    /// Present at selection epochs: mean errors and psi before selection,
    /// counts and shares after it.
    std::optional<PopulationStats> selection;
};

/// Advances the state, updates every agent's belief and, at selection
/// epochs, applies selection. Variates are consumed in the order: state,
/// signals by agent index, rebirth kinds by agent index.
StepRecord step(int t, const SimParams& params, WorldState& world, std::vector<Agent>& agents,
                RandomStream& stream, const SignalSource& signals);

struct EpochRecord {
    int t = 0;
    PopulationStats stats;

    friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct ReplicationResult {
    std::array<double, kKindCount> final_shares{};
    /// Per-kind mean error averaged over the last tau periods.
    std::array<std::optional<double>, kKindCount> final_mse{};
    /// Population mean error averaged over the last tau periods.
    double final_psi = 0.0;
    /// Every selection epoch, then t = T.
    std::vector<EpochRecord> epoch_series;
    std::uint64_t seed = 0;
    int rebirths_total = 0;

    friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

/// Called after every period with the post-period world and population.
using PeriodObserver =
    std::function<void(int t, const WorldState& world, std::span<const Agent> agents, const StepRecord& record)>;

struct RunOptions {
    bool record_epochs = true;
    PeriodObserver observer;
};

ReplicationResult run_replication(const SimParams& params, std::uint64_t seed, const RunOptions& options = {});

/// As run_replication, with an explicit signal source and initial population.
ReplicationResult run_replication(const SimParams& params, std::uint64_t seed, std::vector<Agent> agents,
                                  const SignalSource& signals, const RunOptions& options = {});

} // namespace narrevo

#endif // NARREVO_ENGINE_HPP
