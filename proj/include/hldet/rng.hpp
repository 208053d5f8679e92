#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hldet {

/// Seeded random source with fixed, portable draw semantics.
///
/// std::mt19937_64 output is pinned by the standard, but the standard
/// distributions are not; the mappings below are implemented here so that a
/// seed produces the same stream on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), base_(seed) {}

    /// Derives an independent stream, e.g. one per recording or per layer.
    Rng fork(std::uint64_t stream) const { return Rng(seed_mix(base_, stream)); }

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n), n >= 1. Plain modulo: n is always tiny
    /// compared to 2^64, so the bias is unobservable.
    std::uint64_t uniform_index(std::uint64_t n) { return bits() % n; }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller (pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    static std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
        // splitmix64 finalizer over the combined value
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t base_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace hldet
