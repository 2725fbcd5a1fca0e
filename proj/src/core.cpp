#include "narrevo/core.hpp"

#include <cmath>

namespace narrevo {

namespace {

constexpr std::array<std::string_view, kKindCount> kKindNames{
    "naive", "auto_referential", "skeptical", "conformist", "anti_conformist"};

constexpr std::array<std::string_view, 4> kLawNames{
    "independent", "persistent", "autocorrelated", "selffulfilling"};

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

} // namespace

AgentKind kind_from_code(int code) {
    if (code < 0 || code >= static_cast<int>(kKindCount))
        fail("agent kind code out of range: " + std::to_string(code));
    return static_cast<AgentKind>(code);
}

std::string_view to_string(StateLabel s) noexcept { return s == StateLabel::A ? "A" : "B"; }
std::string_view to_string(SignalLabel s) noexcept { return s == SignalLabel::a ? "a" : "b"; }
std::string_view to_string(AgentKind k) noexcept { return kKindNames[kind_code(k)]; }
std::string_view to_string(LawOfMotion law) noexcept {
    return kLawNames[static_cast<std::size_t>(law)];
}
std::string_view to_string(PersistentRedraw r) noexcept {
    return r == PersistentRedraw::AfterSelection ? "after_selection" : "before_signal";
}

StateLabel state_from_string(std::string_view s) {
    if (s == "A") return StateLabel::A;
    if (s == "B") return StateLabel::B;
    fail("unknown state label: " + std::string(s));
}

AgentKind kind_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == s) return static_cast<AgentKind>(i);
    fail("unknown agent kind: " + std::string(s));
}

LawOfMotion law_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kLawNames.size(); ++i)
        if (kLawNames[i] == s) return static_cast<LawOfMotion>(i);
    fail("unknown law of motion: " + std::string(s));
}

PersistentRedraw redraw_from_string(std::string_view s) {
    if (s == "after_selection") return PersistentRedraw::AfterSelection;
    if (s == "before_signal") return PersistentRedraw::BeforeSignal;
    fail("unknown persistent_redraw: " + std::string(s));
}

Belief::Belief(double value) : value_(value) {
    if (std::isnan(value)) fail("belief must not be NaN");
    if (value < 0.0 || value > 1.0)
        fail("belief must lie in [0,1], got " + std::to_string(value));
}

SimParams benchmark_params() { return SimParams{}; }

void validate_menu(const PrecisionMenu& m) {
    if (!(m.rho1 > 0.5)) fail("rho1 must exceed 0.5");
    if (!(m.rho2 > m.rho1)) fail("rho2 must exceed rho1");
    if (!(m.rho2 <= 1.0)) fail("rho2 must not exceed 1");
    if (!(m.true_p > 0.5)) fail("p must exceed 0.5");
    if (!(m.true_p < 1.0)) fail("p must be below 1");
}

const SimParams& validate_params(const SimParams& p) {
    if (p.n < 1) fail("n must be at least 1");
    if (p.tau < 1) fail("tau must be at least 1");
    if (p.T < p.tau) fail("tau must not exceed T");
    validate_menu(p.menu);
    if (!(p.mu0.value() > 0.0 && p.mu0.value() < 1.0)) fail("mu0 must lie strictly inside (0,1)");
    if (!(p.q > 0.0)) fail("q must exceed 0");
    if (!(p.q <= 1.0)) fail("q must not exceed 1");
    if (p.law == LawOfMotion::AutoCorrelated && p.q < 1.0 / 3.0)
        fail("q must be at least 1/3 for the autocorrelated law");
    if (!(p.delta >= 0.0 && p.delta <= 1.0)) fail("delta must lie in [0,1]");
    return p;
}

} // namespace narrevo
