// Bayesian updating under a perceived precision, and each type's choice of
// narrative (perceived precision) from the two-model menu.
#ifndef NARREVO_BELIEF_HPP
#define NARREVO_BELIEF_HPP

#include "narrevo/core.hpp"

namespace narrevo {

enum class Narrative : std::uint8_t { Rho1, Rho2 };

struct PrecisionChoice {
    Narrative narrative = Narrative::Rho1;
    double rho = 0.0;

    friend bool operator==(const PrecisionChoice&, const PrecisionChoice&) = default;
};

PrecisionChoice resolve(Narrative which, const PrecisionMenu& menu) noexcept;

/// Likelihood of `signal` given the state, under precision `rho`.
constexpr double likelihood(SignalLabel signal, StateLabel state, double rho) noexcept {
    const bool match = (signal == SignalLabel::a) == (state == StateLabel::A);
    return match ? rho : 1.0 - rho;
}

/// Posterior probability of A. Throws std::domain_error when the update is
/// 0/0 (a certain prior contradicted by a signal of precision 1).
Belief bayes_update(Belief prior, SignalLabel signal, double rho);

/// Probability of observing `signal` under the prior and precision `rho`.
double model_fit(Belief prior, SignalLabel signal, double rho) noexcept;

// Fit ties go to Rho1.
PrecisionChoice choose_precision_auto(Belief prior, SignalLabel signal, const PrecisionMenu& menu) noexcept;
PrecisionChoice choose_precision_skeptical(Belief prior, SignalLabel signal, const PrecisionMenu& menu) noexcept;

// Distance ties go to Rho1 for conformists and Rho2 for anti-conformists.
PrecisionChoice choose_precision_conformist(Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                                            Belief avg_belief);
PrecisionChoice choose_precision_anticonformist(Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                                                Belief avg_belief);

/// Perceived precision used by an agent of `kind`. Naive agents use the true
/// precision; `avg_belief` is read only by (anti-)conformists.
double choose_precision(AgentKind kind, Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                        Belief avg_belief);

} // namespace narrevo

#endif // NARREVO_BELIEF_HPP
