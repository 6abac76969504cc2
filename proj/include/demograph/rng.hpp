#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace demograph {

// All randomized operations (ground-truth split, synthetic ages, edge
// sampling) run on this engine instead of <random> distributions, whose
// output is implementation-defined. One global seed therefore reproduces a
// whole experiment byte-for-byte on any toolchain.

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed for a named sub-stream of the global seed: splitmix64(seed ^ fnv1a(name)).
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view name) {
    std::uint64_t s = seed ^ fnv1a64(name);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in (0, 1]; never returns 0 so log() is safe.
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1)
            return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold)
                return r % bound;
        }
    }

    bool next_bernoulli(double p) { return next_unit() <= p; }

    /// Standard normal via Box-Muller (pairs cached).
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Fisher-Yates over [first, last).
    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            std::uint64_t j = next_below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace demograph
