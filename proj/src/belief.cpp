#include "narrevo/belief.hpp"

#include <stdexcept>

namespace narrevo {

PrecisionChoice resolve(Narrative which, const PrecisionMenu& menu) noexcept {
    return {which, which == Narrative::Rho1 ? menu.rho1 : menu.rho2};
}

Belief bayes_update(Belief prior, SignalLabel signal, double rho) {
    const double mu = prior.value();
    const double on_a = likelihood(signal, StateLabel::A, rho) * mu;
    const double on_b = likelihood(signal, StateLabel::B, rho) * (1.0 - mu);
    const double denom = on_a + on_b;
    if (!(denom > 0.0)) throw std::domain_error("bayes_update: zero-probability signal under prior");
    return Belief(on_a / denom);
}

double model_fit(Belief prior, SignalLabel signal, double rho) noexcept {
    const double mu = prior.value();
    return mu * likelihood(signal, StateLabel::A, rho) + (1.0 - mu) * likelihood(signal, StateLabel::B, rho);
}

PrecisionChoice choose_precision_auto(Belief prior, SignalLabel signal, const PrecisionMenu& menu) noexcept {
    const double fit1 = model_fit(prior, signal, menu.rho1);
    const double fit2 = model_fit(prior, signal, menu.rho2);
    return resolve(fit2 > fit1 ? Narrative::Rho2 : Narrative::Rho1, menu);
}

PrecisionChoice choose_precision_skeptical(Belief prior, SignalLabel signal, const PrecisionMenu& menu) noexcept {
    const double fit1 = model_fit(prior, signal, menu.rho1);
    const double fit2 = model_fit(prior, signal, menu.rho2);
    return resolve(fit2 < fit1 ? Narrative::Rho2 : Narrative::Rho1, menu);
}

namespace {

struct Distances {
    double d1;
    double d2;
};

Distances posterior_distances(Belief prior, SignalLabel signal, const PrecisionMenu& menu, Belief avg) {
    const double e1 = bayes_update(prior, signal, menu.rho1).value() - avg.value();
    const double e2 = bayes_update(prior, signal, menu.rho2).value() - avg.value();
    return {e1 * e1, e2 * e2};
}

} // namespace

PrecisionChoice choose_precision_conformist(Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                                            Belief avg_belief) {
    const auto [d1, d2] = posterior_distances(prior, signal, menu, avg_belief);
    return resolve(d2 < d1 ? Narrative::Rho2 : Narrative::Rho1, menu);
}

PrecisionChoice choose_precision_anticonformist(Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                                                Belief avg_belief) {
    const auto [d1, d2] = posterior_distances(prior, signal, menu, avg_belief);
    return resolve(d1 > d2 ? Narrative::Rho1 : Narrative::Rho2, menu);
}

double choose_precision(AgentKind kind, Belief prior, SignalLabel signal, const PrecisionMenu& menu,
                        Belief avg_belief) {
    switch (kind) {
    case AgentKind::Naive:
        return menu.true_p;
    case AgentKind::AutoReferential:
        return choose_precision_auto(prior, signal, menu).rho;
    case AgentKind::Skeptical:
        return choose_precision_skeptical(prior, signal, menu).rho;
    case AgentKind::Conformist:
        return choose_precision_conformist(prior, signal, menu, avg_belief).rho;
    case AgentKind::AntiConformist:
        return choose_precision_anticonformist(prior, signal, menu, avg_belief).rho;
    }
    return menu.true_p;
}

} // namespace narrevo
