#pragma once

#include "holo/detector.hpp"
#include "holo/layout.hpp"

namespace holo {

struct FilterConfig {
    // Fourier-division guard: bins with |Rhat| below epsilon_div * max|Rhat|
    // are zeroed in the inverse filter.
    double epsilon_div = 1e-9;
    // Wiener regularizer; 0 selects the noise-power heuristic
    // lambda = (ybar/np) * mean(|Rhat|^2) (and plain inverse filtering on
    // noiseless data).
    double wiener_lambda = 0.0;
};

// Deconvolution baselines: invert the measured intensities to the composite
// autocorrelation, pull out the specimen/reference cross-correlation block at
// its geometric offset, and divide out the reference spectrum. Both require
// oversampling >= 2 on each axis and gap >= n (the holographic separation
// condition); violations throw GeometryError before any work is done.
// Beamstopped bins enter as zeros.
ImageGrid inverse_filter(const Measurement& meas, const ImageGrid& reference, const Layout& layout,
                         const FilterConfig& cfg = {});
ImageGrid wiener_filter(const Measurement& meas, const ImageGrid& reference, const Layout& layout,
                        const FilterConfig& cfg = {});

}  // namespace holo
