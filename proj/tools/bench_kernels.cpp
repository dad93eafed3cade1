// Times the OpenMP kernels against their serial reference implementations
// and cross-checks the outputs. Sizes cover the desk-scale grid (128 x 384,
// from a 64 px specimen at OS = 2) and the full 256 px grid (512 x 1536).
//
//   holo_bench [--quick]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "holo/detector.hpp"
#include "holo/fft.hpp"
#include "holo/objective.hpp"
#include "holo/solvers.hpp"

using holo::BeamstopMask;
using holo::ComplexField;
using holo::ImageGrid;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_best_of(int reps, F&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = now_ms();
        body();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

void report(const char* kernel, int rows, int cols, double serial_ms, double omp_ms, double diff) {
    std::printf("%-18s %5dx%-5d serial %8.2f ms   omp %8.2f ms   speedup %4.2fx   maxdiff %.2e\n",
                kernel, rows, cols, serial_ms, omp_ms, serial_ms / omp_ms, diff);
}

void bench_size(int rows, int cols, int reps) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ComplexField field(rows, cols);
    for (auto& z : field.v) z = {unif(rng) - 0.5, unif(rng) - 0.5};
    ImageGrid ytilde(rows, cols);
    for (auto& x : ytilde.v) x = unif(rng);
    const BeamstopMask mask = BeamstopMask::from_block_size(rows, cols, 25);

    holo::Fft2d plan(rows, cols);
    {
        ComplexField a = field, b = field;
        const double ts = time_best_of(reps, [&] { b = field; plan.forward_serial(b); });
        const double tp = time_best_of(reps, [&] { a = field; plan.forward(a); });
        double diff = 0.0;
        for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.v[i] - b.v[i]));
        report("fft2d forward", rows, cols, ts, tp, diff);
    }
    {
        double fs = 0.0, fp = 0.0;
        const double ts = time_best_of(reps, [&] { fs = holo::serial::nll_from_field(field, ytilde, mask); });
        const double tp = time_best_of(reps, [&] { fp = holo::nll_from_field(field, ytilde, mask); });
        report("nll reduction", rows, cols, ts, tp, std::abs(fs - fp) / std::abs(fs));
    }
    {
        ComplexField a, b;
        const double ts = time_best_of(reps, [&] { holo::serial::residual_field(field, ytilde, mask, b); });
        const double tp = time_best_of(reps, [&] { holo::residual_field(field, ytilde, mask, a); });
        double diff = 0.0;
        for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.v[i] - b.v[i]));
        report("gradient field", rows, cols, ts, tp, diff);
    }
    {
        ComplexField a, b;
        const double ts = time_best_of(reps, [&] { holo::serial::admm_update_field(field, ytilde, mask, 2.0, b); });
        const double tp = time_best_of(reps, [&] { holo::admm_update_field(field, ytilde, mask, 2.0, a); });
        double diff = 0.0;
        for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.v[i] - b.v[i]));
        report("admm U update", rows, cols, ts, tp, diff);
    }
    {
        holo::LayoutMeta meta;
        meta.n = rows / 2;
        ImageGrid a, b(rows, cols);
        const double ts = time_best_of(
            reps, [&] { holo::serial::poisson_fill(ytilde, mask, 8.0, 0.125, 7, b); });
        const double tp = time_best_of(reps, [&] {
            a = holo::poisson_corrupt(ytilde, mask, 1.0, 8.0, 7, meta).noisy;
        });
        double diff = 0.0;
        for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.v[i] - b.v[i]));
        report("poisson draw", rows, cols, ts, tp, diff);
    }
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    bench_size(128, 384, quick ? 2 : 5);
    if (!quick) bench_size(512, 1536, 3);
    return 0;
}
