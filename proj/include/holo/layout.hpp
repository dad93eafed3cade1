#pragma once

#include "holo/types.hpp"

namespace holo {

// Specimen-gap-reference scene: the composite object is [X | 0 | R] with an
// n x n specimen X, an n x d zero gap, and an n x n reference R, laid out as
// n rows by (2n + d) columns. Detector dimensions follow from per-axis
// oversampling factors with round-half-up.
struct Layout {
    ImageGrid specimen;   // n x n
    ImageGrid reference;  // n x n
    int gap = 0;          // d, pixels
    double os_x = 2.0;    // row-axis oversampling (>= 1)
    double os_y = 2.0;    // column-axis oversampling (>= 1)

    int n() const { return specimen.rows; }
    int composite_rows() const { return n(); }
    int composite_cols() const { return 2 * n() + gap; }
    int m1() const { return detector_dim(os_x, composite_rows()); }
    int m2() const { return detector_dim(os_y, composite_cols()); }

    static int detector_dim(double os, int extent) {
        return static_cast<int>(std::floor(os * extent + 0.5));
    }

    // Throws GeometryError if any invariant fails.
    void validate() const;
};

ImageGrid compose(const Layout& layout);
ImageGrid embed_specimen_only(const Layout& layout);
ImageGrid embed_reference_only(const Layout& layout);

}  // namespace holo
