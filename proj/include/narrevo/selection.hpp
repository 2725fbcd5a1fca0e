// Squared-error fitness, population statistics and the survive-or-rebirth
// rule applied at selection epochs.
#ifndef NARREVO_SELECTION_HPP
#define NARREVO_SELECTION_HPP

#include "narrevo/core.hpp"
#include "narrevo/random.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace narrevo {

enum class ErrorMode : std::uint8_t { AgainstQ, AgainstIndicator };

/// Persistent law is judged against the realized state, all others against q.
constexpr ErrorMode error_mode_for(LawOfMotion law) noexcept {
    return law == LawOfMotion::Persistent ? ErrorMode::AgainstIndicator : ErrorMode::AgainstQ;
}

double squared_error(ErrorMode mode, double q, StateLabel state, Belief belief) noexcept;

/// Errors of every agent, in agent order.
std::vector<double> population_errors(std::span<const Agent> agents, ErrorMode mode, double q, StateLabel state);

struct PopulationStats {
    std::array<int, kKindCount> counts{};
    std::array<double, kKindCount> shares{};
    /// Mean error over agents of each kind; empty when the kind is absent.
    std::array<std::optional<double>, kKindCount> mean_error{};
    double psi = 0.0;
    int rebirth_count = 0;

    int total() const noexcept;
    friend bool operator==(const PopulationStats&, const PopulationStats&) = default;
};

/// Throws std::invalid_argument when the spans differ in length or are empty.
PopulationStats population_stats(std::span<const Agent> agents, std::span<const double> errors);

/// Counts and shares only.
std::array<int, kKindCount> kind_counts(std::span<const Agent> agents) noexcept;

/// Replaces every agent whose error exceeds psi by a newborn of a uniformly
/// drawn kind holding belief mu0. One variate per rebirth, in agent order.
/// Returns the number of rebirths.
int apply_selection(std::vector<Agent>& agents, std::span<const double> errors, double psi, Belief mu0,
                    RandomStream& stream);

/// Uniform kind from one variate.
AgentKind draw_kind(RandomStream& stream);

} // namespace narrevo

#endif // NARREVO_SELECTION_HPP
