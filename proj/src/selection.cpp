#include "narrevo/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace narrevo {

double squared_error(ErrorMode mode, double q, StateLabel state, Belief belief) noexcept {
    double target = q;
    if (mode == ErrorMode::AgainstIndicator) target = state == StateLabel::A ? 1.0 : 0.0;
    const double e = target - belief.value();
    return e * e;
}

std::vector<double> population_errors(std::span<const Agent> agents, ErrorMode mode, double q, StateLabel state) {
    std::vector<double> errors(agents.size());
    std::transform(agents.begin(), agents.end(), errors.begin(),
                   [&](const Agent& a) { return squared_error(mode, q, state, a.belief); });
    return errors;
}

int PopulationStats::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0); }

std::array<int, kKindCount> kind_counts(std::span<const Agent> agents) noexcept {
    std::array<int, kKindCount> counts{};
    for (const auto& a : agents) ++counts[kind_code(a.kind)];
    return counts;
}

PopulationStats population_stats(std::span<const Agent> agents, std::span<const double> errors) {
    if (agents.size() != errors.size())
        throw std::invalid_argument("population_stats: agents and errors differ in length");
    if (agents.empty()) throw std::invalid_argument("population_stats: empty population");

    PopulationStats stats;
    std::array<double, kKindCount> error_sums{};
    // psi is accumulated as offsets from the minimum so that psi >= min(errors)
    // and identical errors give psi equal to each of them, despite rounding.
    const double floor_error = *std::min_element(errors.begin(), errors.end());
    double excess = 0.0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const int k = kind_code(agents[i].kind);
        ++stats.counts[k];
        error_sums[k] += errors[i];
        excess += errors[i] - floor_error;
    }
    const auto n = static_cast<double>(agents.size());
    for (std::size_t k = 0; k < kKindCount; ++k) {
        stats.shares[k] = stats.counts[k] / n;
        if (stats.counts[k] > 0) stats.mean_error[k] = error_sums[k] / stats.counts[k];
    }
    stats.psi = floor_error + excess / n;
    return stats;
}

AgentKind draw_kind(RandomStream& stream) {
    const auto code = static_cast<int>(stream.uniform() * static_cast<double>(kKindCount));
    return kind_from_code(std::min(code, static_cast<int>(kKindCount) - 1));
}

int apply_selection(std::vector<Agent>& agents, std::span<const double> errors, double psi, Belief mu0,
                    RandomStream& stream) {
    if (agents.size() != errors.size())
        throw std::invalid_argument("apply_selection: agents and errors differ in length");
    int reborn = 0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (errors[i] <= psi) continue;
        agents[i] = Agent{draw_kind(stream), mu0};
        ++reborn;
    }
    return reborn;
}

} // namespace narrevo
