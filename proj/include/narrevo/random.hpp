// Deterministic uniform-variate source. Every draw consumes exactly one
// 64-bit engine output, so variate counts are part of the simulation contract.
#ifndef NARREVO_RANDOM_HPP
#define NARREVO_RANDOM_HPP

#include <cstdint>
#include <random>

namespace narrevo {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    /// Uniform on [0, 1) with 53 bits of resolution. Platform independent,
    /// unlike std::uniform_real_distribution.
    double uniform() {
        ++draws_;
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// true with probability `prob` (prob >= 1 always true, prob <= 0 never).
    bool bernoulli(double prob) { return uniform() < prob; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 engine_;
};

} // namespace narrevo

#endif // NARREVO_RANDOM_HPP
