#ifndef RISSM_RNG_HPP
#define RISSM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace rissm {

// splitmix64 finalizer; whitens a (base, salt) pair into an independent
// stream seed. Stable across platforms.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream.
///
/// Core generator is std::mt19937_64, whose output sequence is fixed by the
/// standard, and all variate transforms are implemented here rather than via
/// std::*_distribution (which are implementation-defined). A given seed
/// therefore reproduces bit-identical draws on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [a, b).
    double uniform(double a, double b) { return a + uniform() * (b - a); }

    /// Uniform angle on [0, 2*pi).
    double angle() { return uniform() * 2.0 * std::numbers::pi; }

    /// Rayleigh amplitude with E[x^2] = 1 (complex unit-variance envelope).
    double rayleigh_unit() { return std::sqrt(-std::log(uniform_pos())); }

    /// Standard normal via Box-Muller (two uniforms per call, no caching,
    /// so the draw sequence is independent of call interleaving).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        return r * std::cos(angle());
    }

    /// Circularly-symmetric complex Gaussian with E[|z|^2] = variance.
    std::complex<double> cnormal(double variance) {
        const double r = std::sqrt(-variance * std::log(uniform_pos()));
        const double phi = angle();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    /// Low `count` bits uniform, 0 <= count <= 32.
    std::uint32_t bit_block(int count) {
        if (count <= 0) return 0;
        return static_cast<std::uint32_t>(gen_() >> (64 - count));
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace rissm

#endif
