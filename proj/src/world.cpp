#include "narrevo/world.hpp"

#include <string>

namespace narrevo {

double phi1_from_q(double q) {
    if (!(q >= 1.0 / 3.0 && q <= 1.0))
        throw std::domain_error("phi1_from_q: q must lie in [1/3, 1], got " + std::to_string(q));
    return (3.0 * q - 1.0) / (2.0 * q);
}

double state_prob_A(const SimParams& params, const WorldState& world, int t, Belief avg_belief_prev) {
    switch (params.law) {
    case LawOfMotion::Independent:
        return params.q;
    case LawOfMotion::Persistent:
        if (is_persistent_redraw(t, params)) return params.q;
        return world.current == StateLabel::A ? 1.0 : 0.0;
    case LawOfMotion::AutoCorrelated:
        return world.current == StateLabel::A ? world.phi1 : 1.0 - kPhi2;
    case LawOfMotion::SelfFulfilling:
        return params.delta * avg_belief_prev.value() + (1.0 - params.delta) * params.q;
    }
    return params.q;
}

namespace {

StateLabel draw_state(double prob_a, RandomStream& stream) {
    return stream.bernoulli(prob_a) ? StateLabel::A : StateLabel::B;
}

} // namespace

WorldState initial_state(const SimParams& params, RandomStream& stream) {
    WorldState world;
    if (params.law == LawOfMotion::AutoCorrelated) world.phi1 = phi1_from_q(params.q);
    world.period_of_last_redraw = 1;
    double prob_a = params.q;
    if (params.law == LawOfMotion::SelfFulfilling)
        prob_a = params.delta * params.mu0.value() + (1.0 - params.delta) * params.q;
    world.current = draw_state(prob_a, stream);
    return world;
}

WorldState advance_state(const SimParams& params, const WorldState& world, int t, Belief avg_belief_prev,
                         RandomStream& stream) {
    WorldState next = world;
    if (params.law == LawOfMotion::Persistent && !is_persistent_redraw(t, params)) return next;
    if (params.law == LawOfMotion::Persistent) next.period_of_last_redraw = t;
    next.current = draw_state(state_prob_A(params, world, t, avg_belief_prev), stream);
    return next;
}

SignalLabel sample_signal(StateLabel state, double p, RandomStream& stream) {
    const bool match = stream.bernoulli(p);
    const bool says_a = (state == StateLabel::A) == match;
    return says_a ? SignalLabel::a : SignalLabel::b;
}

} // namespace narrevo
