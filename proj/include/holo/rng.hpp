#pragma once

#include <cmath>
#include <cstdint>

namespace holo {

// splitmix64 output function.
inline uint64_t mix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: the stream for (seed, counter) is a splitmix64
// walk starting from state = mix64(mix64(seed) ^ mix64(counter + 1)). Each
// detector pixel uses counter = row * m2 + col, so draws are independent of
// evaluation order and of the number of threads. This mapping is part of the
// reproducibility contract and must not change between releases.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t counter)
        : state_(mix64(mix64(seed) ^ mix64(counter + 1))) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Exact Poisson sampler: sequential inversion below mean 10, Hormann's PTRS
// transformed rejection above. Returns an integer-valued double so counts
// beyond 2^32 (very high photon flux) stay exact.
inline double poisson_sample(double lambda, CounterRng& rng) {
    if (lambda <= 0.0) return 0.0;
    if (lambda < 10.0) {
        const double max_k = 10.0 * lambda + 120.0;
        double k = 0.0;
        double p = std::exp(-lambda);
        double cum = p;
        const double u = rng.next_unit();
        while (u > cum && k < max_k) {
            k += 1.0;
            p *= lambda / k;
            cum += p;
        }
        return k;
    }
    // PTRS (Hormann 1993)
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        const double u = rng.next_unit() - 0.5;
        double v = rng.next_unit();
        if (v <= 0.0) v = 0x1.0p-53;
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - std::lgamma(k + 1.0))
            return k;
    }
}

}  // namespace holo
