#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace holo {

// Parallel sum with a fixed block decomposition. Each block is accumulated
// serially and the per-block partials are combined in block order, so the
// result is bit-identical regardless of the number of OpenMP threads (and
// identical run to run). All floating-point reductions in the library that
// feed reproducible outputs go through this.
template <typename F>
double block_sum(std::ptrdiff_t n, F&& term) {
    constexpr std::ptrdiff_t kBlock = 4096;
    const std::ptrdiff_t nblocks = (n + kBlock - 1) / kBlock;
    if (nblocks <= 1) {
        double acc = 0.0;
        for (std::ptrdiff_t i = 0; i < n; ++i) acc += term(i);
        return acc;
    }
    std::vector<double> partial(static_cast<size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
        const std::ptrdiff_t lo = b * kBlock;
        const std::ptrdiff_t hi = std::min(n, lo + kBlock);
        double acc = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

namespace serial {

// Plain single-loop reference accumulation.
template <typename F>
double block_sum(std::ptrdiff_t n, F&& term) {
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += term(i);
    return acc;
}

}  // namespace serial

}  // namespace holo
