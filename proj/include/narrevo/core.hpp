// Shared vocabulary for the narrative-selection simulator: labels, beliefs,
// parameter records and their validation.
#ifndef NARREVO_CORE_HPP
#define NARREVO_CORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace narrevo {

/// Raised when a parameter record or configuration violates a bound.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StateLabel : std::uint8_t { A, B };
enum class SignalLabel : std::uint8_t { a, b };

/// Stable codes 0..4, in this order, are part of the file formats.
enum class AgentKind : std::uint8_t {
    Naive = 0,
    AutoReferential = 1,
    Skeptical = 2,
    Conformist = 3,
    AntiConformist = 4,
};

inline constexpr std::size_t kKindCount = 5;
inline constexpr std::array<AgentKind, kKindCount> kAllKinds{
    AgentKind::Naive, AgentKind::AutoReferential, AgentKind::Skeptical,
    AgentKind::Conformist, AgentKind::AntiConformist};

enum class LawOfMotion : std::uint8_t {
    Independent = 0,
    Persistent = 1,
    AutoCorrelated = 2,
    SelfFulfilling = 3,
};

inline constexpr std::array<LawOfMotion, 4> kAllLaws{
    LawOfMotion::Independent, LawOfMotion::Persistent,
    LawOfMotion::AutoCorrelated, LawOfMotion::SelfFulfilling};

/// When the persistent law draws the state of a new block. AfterSelection
/// redraws at the end of period k*tau (effective from k*tau + 1);
/// BeforeSignal redraws at the start of period k*tau.
enum class PersistentRedraw : std::uint8_t { AfterSelection, BeforeSignal };

constexpr int kind_code(AgentKind k) noexcept { return static_cast<int>(k); }
AgentKind kind_from_code(int code);

std::string_view to_string(StateLabel s) noexcept;
std::string_view to_string(SignalLabel s) noexcept;
std::string_view to_string(AgentKind k) noexcept;
std::string_view to_string(LawOfMotion law) noexcept;
std::string_view to_string(PersistentRedraw r) noexcept;

StateLabel state_from_string(std::string_view s);
AgentKind kind_from_string(std::string_view s);
LawOfMotion law_from_string(std::string_view s);
PersistentRedraw redraw_from_string(std::string_view s);

/// Probability that the state is A. Always within [0, 1].
class Belief {
public:
    constexpr Belief() noexcept = default;
    explicit Belief(double value);

    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }

    friend constexpr bool operator==(Belief, Belief) noexcept = default;

private:
    double value_ = 0.5;
};

/// The two candidate narratives and the true channel precision.
struct PrecisionMenu {
    double rho1 = 0.6;
    double rho2 = 0.9;
    double true_p = 0.7;

    friend bool operator==(const PrecisionMenu&, const PrecisionMenu&) = default;
};

struct SimParams {
    int n = 500;
    int T = 700;
    int tau = 10;
    PrecisionMenu menu{};
    Belief mu0{0.5};
    double q = 0.7;
    double delta = 0.5;
    LawOfMotion law = LawOfMotion::Independent;
    PersistentRedraw persistent_redraw = PersistentRedraw::AfterSelection;

    friend bool operator==(const SimParams&, const SimParams&) = default;
};

/// Table-1 benchmark parameterization (q and law left at their defaults).
SimParams benchmark_params();

/// Throws ValidationError naming the first violated bound.
void validate_menu(const PrecisionMenu& menu);

/// Returns `params` unchanged when every bound holds, otherwise throws
/// ValidationError naming the violated bound.
const SimParams& validate_params(const SimParams& params);

struct Agent {
    AgentKind kind = AgentKind::Naive;
    Belief belief{};

    friend bool operator==(const Agent&, const Agent&) = default;
};

} // namespace narrevo

#endif // NARREVO_CORE_HPP
