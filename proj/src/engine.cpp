#include "narrevo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace narrevo {

SignalSource SignalSource::injected(std::vector<std::vector<SignalLabel>> per_agent) {
    SignalSource src;
    src.injected_ = std::move(per_agent);
    return src;
}

SignalLabel SignalSource::next(std::size_t agent, int t, StateLabel state, double p, RandomStream& stream) const {
    if (!injected_) return sample_signal(state, p, stream);
    const auto& seqs = *injected_;
    const auto period = static_cast<std::size_t>(t - 1);
    if (agent >= seqs.size() || period >= seqs[agent].size())
        throw SignalExhausted("no injected signal for agent " + std::to_string(agent) + " at t=" +
                              std::to_string(t));
    return seqs[agent][period];
}

std::array<double, kKindCount> draw_simplex_shares(RandomStream& stream) {
    std::array<double, kKindCount> shares{};
    for (auto& s : shares) s = -std::log1p(-stream.uniform());
    const double total = std::accumulate(shares.begin(), shares.end(), 0.0);
    for (auto& s : shares) s /= total;
    return shares;
}

std::array<int, kKindCount> apportion(const std::array<double, kKindCount>& shares, int n) {
    std::array<int, kKindCount> seats{};
    std::array<double, kKindCount> remainder{};
    int assigned = 0;
    for (std::size_t k = 0; k < kKindCount; ++k) {
        const double quota = shares[k] * n;
        seats[k] = static_cast<int>(std::floor(quota));
        remainder[k] = quota - seats[k];
        assigned += seats[k];
    }
    if (assigned > n) throw std::invalid_argument("apportion: shares sum above one");
    std::array<std::size_t, kKindCount> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    // Cycles in case shares summing slightly under one leave extra seats.
    for (std::size_t i = 0; assigned < n; i = (i + 1) % kKindCount, ++assigned) ++seats[order[i]];
    return seats;
}

std::vector<Agent> init_population(const SimParams& params, RandomStream& stream) {
    const auto seats = apportion(draw_simplex_shares(stream), params.n);
    std::vector<Agent> agents;
    agents.reserve(static_cast<std::size_t>(params.n));
    for (std::size_t k = 0; k < kKindCount; ++k)
        agents.insert(agents.end(), static_cast<std::size_t>(seats[k]), Agent{static_cast<AgentKind>(k), params.mu0});
    return agents;
}

double mean_belief(std::span<const Agent> agents) noexcept {
    if (agents.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& a : agents) sum += a.belief.value();
    return sum / static_cast<double>(agents.size());
}

StepRecord step(int t, const SimParams& params, WorldState& world, std::vector<Agent>& agents,
                RandomStream& stream, const SignalSource& signals) {
    StepRecord record;
    // The average prior of period t is also the post-update average of t-1.
    const Belief avg_prior{std::clamp(mean_belief(agents), 0.0, 1.0)};
    record.avg_prior = avg_prior.value();

    world = t == 1 ? initial_state(params, stream) : advance_state(params, world, t, avg_prior, stream);
    record.state = world.current;

    for (std::size_t i = 0; i < agents.size(); ++i) {
        Agent& agent = agents[i];
        const SignalLabel s = signals.next(i, t, world.current, params.menu.true_p, stream);
        const double rho = choose_precision(agent.kind, agent.belief, s, params.menu, avg_prior);
        agent.belief = bayes_update(agent.belief, s, rho);
    }

    if (is_selection_period(t, params)) {
        const auto errors = population_errors(agents, error_mode_for(params.law), params.q, world.current);
        PopulationStats stats = population_stats(agents, errors);
        stats.rebirth_count = apply_selection(agents, errors, stats.psi, params.mu0, stream);
        stats.counts = kind_counts(agents);
        for (std::size_t k = 0; k < kKindCount; ++k)
            stats.shares[k] = stats.counts[k] / static_cast<double>(agents.size());
        record.selection = stats;
    }
    return record;
}

namespace {

// Continues the stream of an already-seeded run.
ReplicationResult run_periods(const SimParams& params, RandomStream& stream, std::vector<Agent> agents,
                              const SignalSource& signals, const RunOptions& options) {
    ReplicationResult result;
    result.seed = stream.seed();
    WorldState world;

    std::array<double, kKindCount> mse_sum{};
    std::array<int, kKindCount> mse_periods{};
    double psi_sum = 0.0;
    const int window_start = params.T - params.tau + 1;
    const ErrorMode mode = error_mode_for(params.law);

    for (int t = 1; t <= params.T; ++t) {
        const StepRecord record = step(t, params, world, agents, stream, signals);
        if (record.selection) {
            result.rebirths_total += record.selection->rebirth_count;
            if (options.record_epochs) result.epoch_series.push_back({t, *record.selection});
        }
        if (t >= window_start) {
            const auto errors = population_errors(agents, mode, params.q, world.current);
            const auto stats = population_stats(agents, errors);
            psi_sum += stats.psi;
            for (std::size_t k = 0; k < kKindCount; ++k) {
                if (!stats.mean_error[k]) continue;
                mse_sum[k] += *stats.mean_error[k];
                ++mse_periods[k];
            }
            if (t == params.T) {
                result.final_shares = stats.shares;
                if (options.record_epochs) result.epoch_series.push_back({t, stats});
            }
        }
        if (options.observer) options.observer(t, world, agents, record);
    }

    result.final_psi = psi_sum / params.tau;
    for (std::size_t k = 0; k < kKindCount; ++k)
        if (mse_periods[k] > 0) result.final_mse[k] = mse_sum[k] / mse_periods[k];
    return result;
}

} // namespace

ReplicationResult run_replication(const SimParams& params, std::uint64_t seed, const RunOptions& options) {
    validate_params(params);
    RandomStream stream(seed);
    auto agents = init_population(params, stream);
    return run_periods(params, stream, std::move(agents), SignalSource::channel(), options);
}

ReplicationResult run_replication(const SimParams& params, std::uint64_t seed, std::vector<Agent> agents,
                                  const SignalSource& signals, const RunOptions& options) {
    validate_params(params);
    if (static_cast<int>(agents.size()) != params.n)
        throw std::invalid_argument("run_replication: population size differs from n");
    RandomStream stream(seed);
    return run_periods(params, stream, std::move(agents), signals, options);
}

} // namespace narrevo
