#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dstm/matrix.hpp"

namespace dstm {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Derive an independent stream seed from a master seed and stream indices.
/// Used to give every frame / restart its own reproducible generator.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = master;
    std::uint64_t h = detail::splitmix64(s);
    s ^= a * 0xD1342543DE82EF95ull;
    h ^= detail::splitmix64(s);
    s ^= b * 0xAF251AF3B0F025B5ull;
    h ^= detail::splitmix64(s);
    return h;
}

/// Deterministic random source. Gaussian variates use an explicit Box-Muller
/// transform rather than std::normal_distribution so output bits do not
/// depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // (0,1] for the log argument
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly-symmetric complex Gaussian with total variance `var`.
    cx cgaussian(double var = 1.0) {
        const double s = std::sqrt(var * 0.5);
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

    /// Uniform label draw; n must be a power of two.
    std::size_t uniform_pow2(std::size_t n) {
        const std::uint64_t x = eng_();
        if (n <= 1) return 0;
        std::size_t k = 0;
        while ((std::size_t{1} << k) < n) ++k;
        return static_cast<std::size_t>(x >> (64 - k)) & (n - 1);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dstm
