#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lulc {

// Stateless splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    std::uint64_t s = mix64(seed + 0x9E3779B97F4A7C15ULL * stream);
    return mix64(s + 0xD1B54A32D192ED03ULL * step);
}

/// Deterministic random stream. mt19937_64 output is fully specified by the
/// standard and the uniform mappings below avoid distribution objects, so a
/// given seed produces the same values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller (two draws per call, fixed order).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    std::mt19937_64 engine_;
};

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t step) {
    return Rng(mix_seed(seed, stream, step));
}

} // namespace lulc
