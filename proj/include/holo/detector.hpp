#pragma once

#include <cstdint>

#include "holo/fourier.hpp"
#include "holo/layout.hpp"
#include "holo/references.hpp"
#include "holo/types.hpp"

namespace holo {

// Centered low-frequency occlusion. A pixel with signed centered frequencies
// (i, j) is masked out iff |i| < omega1 and |j| < omega2, so the zero block
// is (2*omega1 - 1) x (2*omega2 - 1) around DC and omega = 0 masks nothing.
struct BeamstopMask {
    int rows = 0;
    int cols = 0;
    int omega1 = 0;
    int omega2 = 0;
    std::vector<uint8_t> m;  // 1 = measured

    static BeamstopMask all_pass(int rows, int cols) { return centered(rows, cols, 0, 0); }
    static BeamstopMask centered(int rows, int cols, int omega1, int omega2);
    // Square k x k stop (k odd, omega = (k+1)/2); k = 0 means no beamstop.
    static BeamstopMask from_block_size(int rows, int cols, int k);

    bool measured(int r, int c) const { return m[static_cast<size_t>(r) * cols + c] != 0; }
    size_t masked_count() const;
    bool any_masked() const { return omega1 > 0 && omega2 > 0; }
};

// Geometry a solver needs to rebuild the forward model from a measurement
// alone; the specimen itself stays unknown.
struct LayoutMeta {
    int n = 0;
    int gap = 0;
    double os_x = 2.0;
    double os_y = 2.0;
    ReferenceKind ref_kind = ReferenceKind::Ura;
    int pinhole_radius = 0;  // 0 = default

    Layout to_layout() const {
        Layout layout;
        layout.specimen = ImageGrid(n, n);
        layout.reference = generate_reference(ref_kind, n, pinhole_radius);
        layout.gap = gap;
        layout.os_x = os_x;
        layout.os_y = os_y;
        return layout;
    }
};

// Everything a solver is allowed to see.
struct Measurement {
    ImageGrid noisy;     // Ytilde, m1 x m2; zero on masked pixels
    BeamstopMask mask;
    double np = 0.0;     // photons per pixel; 0 encodes noiseless data
    double ybar = 0.0;   // mean of the clean pre-beamstop intensity
    uint64_t seed = 0;
    LayoutMeta meta;
};

// |dft(compose(layout))|^2 on the detector grid, before any masking.
ImageGrid clean_intensity(const Layout& layout);

// Mean over all m1*m2 detector pixels.
double mean_intensity(const ImageGrid& y);

ImageGrid apply_beamstop(const ImageGrid& y, const BeamstopMask& mask);

// Draw Ytilde = (ybar/np) * Pois(np/ybar * Y) per measured pixel, row-major
// counter seeding. y_masked must already be beamstop-masked; ybar comes from
// the pre-beamstop clean intensity. np = 0 passes the data through unchanged
// (noiseless). Throws DataError on negative or non-finite input.
Measurement poisson_corrupt(const ImageGrid& y_masked, const BeamstopMask& mask, double ybar,
                            double np, uint64_t seed, const LayoutMeta& meta);

// Full pipeline: clean intensity -> ybar -> beamstop -> Poisson noise.
Measurement simulate_measurement(const Layout& layout, const LayoutMeta& meta, int beamstop_k,
                                 double np, uint64_t seed);

namespace serial {
// Plain-loop reference for the corruption kernel (same counter streams).
void poisson_fill(const ImageGrid& y_masked, const BeamstopMask& mask, double scale_to_counts,
                  double scale_to_intensity, uint64_t seed, ImageGrid& out);
}  // namespace serial

}  // namespace holo
