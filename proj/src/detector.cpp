#include "holo/detector.hpp"

#include <cmath>

#include "holo/reduce.hpp"
#include "holo/rng.hpp"

namespace holo {

BeamstopMask BeamstopMask::centered(int rows, int cols, int omega1, int omega2) {
    if (rows < 1 || cols < 1) throw GeometryError("mask dims must be positive");
    if (omega1 < 0 || omega2 < 0) throw ConfigError("beamstop cutoffs must be nonnegative");
    BeamstopMask mask;
    mask.rows = rows;
    mask.cols = cols;
    mask.omega1 = omega1;
    mask.omega2 = omega2;
    mask.m.assign(static_cast<size_t>(rows) * cols, 1);
    if (omega1 > 0 && omega2 > 0) {
        for (int r = 0; r < rows; ++r) {
            const int fi = std::abs(centered_freq(r, rows));
            if (fi >= omega1) continue;
            for (int c = 0; c < cols; ++c) {
                if (std::abs(centered_freq(c, cols)) < omega2)
                    mask.m[static_cast<size_t>(r) * cols + c] = 0;
            }
        }
    }
    return mask;
}

BeamstopMask BeamstopMask::from_block_size(int rows, int cols, int k) {
    if (k == 0) return all_pass(rows, cols);
    if (k < 0 || k % 2 == 0) throw ConfigError("beamstop block size must be odd (or 0 for none)");
    return centered(rows, cols, (k + 1) / 2, (k + 1) / 2);
}

size_t BeamstopMask::masked_count() const {
    size_t n = 0;
    for (uint8_t x : m) n += (x == 0);
    return n;
}

ImageGrid clean_intensity(const Layout& layout) {
    const ComplexField s_hat = dft_padded(compose(layout), layout.m1(), layout.m2());
    ImageGrid y(s_hat.rows, s_hat.cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(y.size()); ++i)
        y.v[i] = std::norm(s_hat.v[i]);
    return y;
}

double mean_intensity(const ImageGrid& y) {
    const double* p = y.v.data();
    const double total =
        block_sum(static_cast<std::ptrdiff_t>(y.size()), [p](std::ptrdiff_t i) { return p[i]; });
    return total / static_cast<double>(y.size());
}

ImageGrid apply_beamstop(const ImageGrid& y, const BeamstopMask& mask) {
    if (y.rows != mask.rows || y.cols != mask.cols)
        throw GeometryError("beamstop mask dims do not match intensity");
    ImageGrid out = y;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i)
        if (!mask.m[static_cast<size_t>(i)]) out.v[i] = 0.0;
    return out;
}

namespace serial {

void poisson_fill(const ImageGrid& y_masked, const BeamstopMask& mask, double scale_to_counts,
                  double scale_to_intensity, uint64_t seed, ImageGrid& out) {
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(y_masked.size()); ++i) {
        if (!mask.m[static_cast<size_t>(i)]) {
            out.v[i] = 0.0;
            continue;
        }
        CounterRng rng(seed, static_cast<uint64_t>(i));
        out.v[i] = scale_to_intensity * poisson_sample(scale_to_counts * y_masked.v[i], rng);
    }
}

}  // namespace serial

Measurement poisson_corrupt(const ImageGrid& y_masked, const BeamstopMask& mask, double ybar,
                            double np, uint64_t seed, const LayoutMeta& meta) {
    if (y_masked.rows != mask.rows || y_masked.cols != mask.cols)
        throw GeometryError("mask dims do not match intensity");
    if (np < 0.0 || !std::isfinite(np)) throw DataError("photon flux must be >= 0");
    for (double v : y_masked.v)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DataError("intensity must be finite and >= 0");

    Measurement meas;
    meas.mask = mask;
    meas.np = np;
    meas.ybar = ybar;
    meas.seed = seed;
    meas.meta = meta;

    if (np == 0.0) {
        meas.noisy = y_masked;  // noiseless pass-through
        return meas;
    }
    if (!(ybar > 0.0)) throw DataError("ybar must be positive for noisy simulation");

    const double to_counts = np / ybar;
    const double to_intensity = ybar / np;
    meas.noisy = ImageGrid(y_masked.rows, y_masked.cols);
    ImageGrid& out = meas.noisy;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(y_masked.size()); ++i) {
        if (!mask.m[static_cast<size_t>(i)]) {
            out.v[i] = 0.0;
            continue;
        }
        CounterRng rng(seed, static_cast<uint64_t>(i));
        out.v[i] = to_intensity * poisson_sample(to_counts * y_masked.v[i], rng);
    }
    return meas;
}

Measurement simulate_measurement(const Layout& layout, const LayoutMeta& meta, int beamstop_k,
                                 double np, uint64_t seed) {
    const ImageGrid y = clean_intensity(layout);
    const double ybar = mean_intensity(y);
    const BeamstopMask mask = BeamstopMask::from_block_size(y.rows, y.cols, beamstop_k);
    return poisson_corrupt(apply_beamstop(y, mask), mask, ybar, np, seed, meta);
}

}  // namespace holo
