#include "holo/baselines.hpp"

#include <cmath>

#include "holo/fft.hpp"
#include "holo/reduce.hpp"

namespace holo {

namespace {

void check_baseline_geometry(const Layout& layout) {
    layout.validate();
    const double tol = 1e-9;
    if (layout.os_x < 2.0 - tol || layout.os_y < 2.0 - tol)
        throw GeometryError(
            "geometry unsupported by baseline: deconvolution filters require an "
            "oversampling ratio of at least two on both axes");
    if (layout.gap < layout.n())
        throw GeometryError(
            "geometry unsupported by baseline: deconvolution filters require a "
            "specimen-reference separation of at least n");
}

// Shared deconvolution pipeline; wiener = false does guarded inverse
// filtering, wiener = true divides by conj(Rhat)/(|Rhat|^2 + lambda).
ImageGrid deconvolve(const Measurement& meas, const ImageGrid& reference, const Layout& layout,
                     const FilterConfig& cfg, bool wiener) {
    check_baseline_geometry(layout);
    const int n = layout.n();
    const int d = layout.gap;
    const int m1 = layout.m1();
    const int m2 = layout.m2();
    if (meas.noisy.rows != m1 || meas.noisy.cols != m2)
        throw GeometryError("measurement dims do not match layout");
    if (reference.rows != n || reference.cols != n)
        throw GeometryError("reference must be n x n");

    // autocorrelation of the composite: unnormalized inverse DFT of Ytilde
    ComplexField acorr(m1, m2);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(acorr.size()); ++i)
        acorr.v[i] = meas.noisy.v[i];
    Fft2d detector_plan(m1, m2);
    detector_plan.inverse(acorr);

    // cross-correlation block X*R sits at row lags (-n, n), column lags
    // n + d + (-n, n); wrap it onto an L x L grid with L >= 2n-1 (alias-free
    // for the (2n-1)-wide correlation support). L is taken prime: composite
    // grid lengths hit exact zeros of the reference spectrum (e.g. 2n with a
    // URA, any even L with the block reference) and the Fourier division
    // loses those bins.
    int L = 2 * n - 1;
    auto is_prime = [](int p) {
        if (p < 2) return false;
        for (int f = 2; f * f <= p; ++f)
            if (p % f == 0) return false;
        return true;
    };
    while (!is_prime(L)) ++L;
    ComplexField cc(L, L);
    for (int a1 = -(n - 1); a1 <= n - 1; ++a1) {
        const int src_r = (a1 + m1) % m1;
        const int dst_r = (a1 + L) % L;
        for (int a2 = -(n - 1); a2 <= n - 1; ++a2) {
            const int src_c = (n + d + a2) % m2;
            const int dst_c = (a2 + L) % L;
            cc.at(dst_r, dst_c) = acorr.at(src_r, src_c).real();
        }
    }

    Fft2d block_plan(L, L);
    ComplexField rhat(L, L);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) rhat.at(r, c) = reference.at(r, c);
    block_plan.forward(rhat);
    block_plan.forward(cc);

    double rhat_max = 0.0;
    for (const cplx& z : rhat.v) rhat_max = std::max(rhat_max, std::abs(z));

    double lambda = cfg.wiener_lambda;
    if (wiener && lambda <= 0.0) {
        lambda = 0.0;
        if (meas.np > 0.0) {
            const cplx* rp = rhat.v.data();
            const double mean_r2 = block_sum(static_cast<std::ptrdiff_t>(rhat.size()),
                                             [rp](std::ptrdiff_t i) { return std::norm(rp[i]); }) /
                                   static_cast<double>(rhat.size());
            lambda = meas.ybar / meas.np * mean_r2;
        }
    }

    // DFT(cc) = conj(Xhat) * Rhat, so the image spectrum is conj(cc_hat / Rhat)
    const double guard = cfg.epsilon_div * rhat_max;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cc.size()); ++i) {
        if (wiener) {
            const double denom = std::norm(rhat.v[i]) + lambda;
            cc.v[i] = denom > 0.0 ? std::conj(cc.v[i] * std::conj(rhat.v[i]) / denom) : cplx{0.0, 0.0};
        } else {
            cc.v[i] = std::abs(rhat.v[i]) > guard ? std::conj(cc.v[i] / rhat.v[i]) : cplx{0.0, 0.0};
        }
    }
    block_plan.inverse(cc);

    ImageGrid xhat(n, n);
    const double scale = 1.0 / (static_cast<double>(L) * L);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) xhat.at(r, c) = cc.at(r, c).real() * scale;
    return xhat;
}

}  // namespace

ImageGrid inverse_filter(const Measurement& meas, const ImageGrid& reference, const Layout& layout,
                         const FilterConfig& cfg) {
    return deconvolve(meas, reference, layout, cfg, false);
}

ImageGrid wiener_filter(const Measurement& meas, const ImageGrid& reference, const Layout& layout,
                        const FilterConfig& cfg) {
    return deconvolve(meas, reference, layout, cfg, true);
}

}  // namespace holo
