#pragma once

#include "holo/fft.hpp"
#include "holo/layout.hpp"
#include "holo/types.hpp"

namespace holo {

// Unitary 2-D DFT of img zero-padded to m1 x m2 (top-left anchored), with
// 1/sqrt(m1*m2) normalization so the padded round trip is exactly identity.
ComplexField dft_padded(const ImageGrid& img, int m1, int m2);

// Geometry-bound forward model. forward(X) is the unitary DFT of [X|0|0]
// padded to the detector grid; adjoint is its exact adjoint under the real
// inner product, so adjoint(forward(X)) == X. The reference field
// B = dft([0|0|R]) is computed once at construction. Immutable afterwards;
// transforms use per-call buffers and may run concurrently.
class ForwardOperator {
public:
    explicit ForwardOperator(const Layout& layout);

    int n() const { return n_; }
    int m1() const { return m1_; }
    int m2() const { return m2_; }

    ComplexField forward(const ImageGrid& x) const;
    ImageGrid adjoint(const ComplexField& w) const;
    const ComplexField& reference_field() const { return b_; }

private:
    int n_ = 0;
    int gap_ = 0;
    int m1_ = 0;
    int m2_ = 0;
    Fft2d fft_;
    ComplexField b_;
};

}  // namespace holo
