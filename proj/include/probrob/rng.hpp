#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "probrob/errors.hpp"

namespace probrob {

// splitmix64 finalizer. Whitens derived seeds before they reach the engine so
// that nearby (seed, index) pairs produce unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Substream roles. One run seed fans out into independent streams for the
// closeness estimator, the MC baseline, and each polyhedron's sampler.
enum class StreamRole : std::uint64_t {
    Closeness = 0x636c6f7365ull,
    McBaseline = 0x6d630ull,
    Polyhedron = 0x706f6c79ull,
};

// Seed splitting rule (documented contract, relied on for reproducibility):
//
//     engine_seed = splitmix64(base_seed XOR role_tag XOR index)
//
// For polyhedron streams `index` is the canonical polyhedron index, so the
// per-polyhedron estimate does not depend on worker count or scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, StreamRole role, std::uint64_t index = 0) {
    return splitmix64(base ^ static_cast<std::uint64_t>(role) ^ index);
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

// Inverse standard normal CDF. Acklam's rational approximation polished with
// one Halley step; accurate to ~1e-15 over (0, 1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) {
            return -HUGE_VAL;
        }
        if (p == 1.0) {
            return HUGE_VAL;
        }
        throw ValidationError("normal_quantile: p outside [0, 1]");
    }
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement on Phi(x) - p.
    double e = normal_cdf(x) - p;
    double u = e * 2.50662827463100050242 * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

// Deterministic stream of doubles on top of mt19937_64 (whose output sequence
// is fully specified by the standard). Conversions to double are explicit
// here instead of going through std::uniform_real_distribution, whose mapping
// is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Index into a cumulative weight table; weights must sum to ~1.
    std::size_t categorical(const std::vector<double>& cumulative) {
        double u = uniform01();
        for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
            if (u < cumulative[i]) {
                return i;
            }
        }
        return cumulative.empty() ? 0 : cumulative.size() - 1;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace probrob
