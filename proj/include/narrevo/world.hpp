// Laws of motion for the binary state and the symmetric signal channel.
#ifndef NARREVO_WORLD_HPP
#define NARREVO_WORLD_HPP

#include "narrevo/core.hpp"
#include "narrevo/random.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace narrevo {

/// Persistence of state B under the autocorrelated law, normalized to 1/2.
inline constexpr double kPhi2 = 0.5;

/// Persistence of state A that makes `q` the invariant probability of A.
/// Throws std::domain_error for q outside [1/3, 1].
double phi1_from_q(double q);

/// Row-stochastic transition matrix; rows index the previous state (A, B).
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> transition_matrix(Scalar phi1, Scalar phi2) {
    Eigen::Matrix<Scalar, 2, 2> P;
    P << phi1, Scalar(1) - phi1,
         Scalar(1) - phi2, phi2;
    return P;
}

/// Solves pi = pi P with pi summing to one.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> stationary_distribution(const Eigen::MatrixBase<Derived>& P) {
    using Scalar = typename Derived::Scalar;
    using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
    Mat2 system = P.transpose() - Mat2::Identity();
    system.row(1).setOnes();
    Eigen::Matrix<Scalar, 2, 1> rhs(Scalar(0), Scalar(1));
    return system.colPivHouseholderQr().solve(rhs);
}

struct WorldState {
    StateLabel current = StateLabel::A;
    double phi1 = 0.0;               // autocorrelated law only
    int period_of_last_redraw = 0;   // persistent law only

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

/// Selection epochs: t = k*tau with k >= 1 and t <= T - tau.
constexpr bool is_selection_period(int t, const SimParams& p) noexcept {
    return t % p.tau == 0 && t <= p.T - p.tau;
}

/// True when the persistent law draws a fresh state for period t.
constexpr bool is_persistent_redraw(int t, const SimParams& p) noexcept {
    if (p.persistent_redraw == PersistentRedraw::BeforeSignal) return is_selection_period(t, p);
    // A redraw scheduled at the end of epoch t-1 takes effect at t; the
    // variate order is the same as drawing it at the end of t-1.
    return t >= 2 && is_selection_period(t - 1, p);
}

/// Probability that the period-t state is A.
double state_prob_A(const SimParams& params, const WorldState& world, int t, Belief avg_belief_prev);

/// Draws the period-1 state from the law's unconditional distribution.
/// Consumes exactly one variate.
WorldState initial_state(const SimParams& params, RandomStream& stream);

/// Draws the period-t state (t >= 2). The persistent law consumes a variate
/// only at redraw periods; every other law consumes exactly one.
WorldState advance_state(const SimParams& params, const WorldState& world, int t, Belief avg_belief_prev,
                         RandomStream& stream);

/// Signal matching the state with probability p. Consumes one variate.
SignalLabel sample_signal(StateLabel state, double p, RandomStream& stream);

} // namespace narrevo

#endif // NARREVO_WORLD_HPP
