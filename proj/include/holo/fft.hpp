#pragma once

#include <vector>

#include "holo/types.hpp"

namespace holo {

// Mixed-radix complex FFT for one axis length. Handles any n >= 1 via
// Cooley-Tukey decomposition with dedicated radix-2/3/4/5 butterflies and a
// generic O(p^2) butterfly for other prime factors (oversampling sweeps
// produce lengths like 80, 240, 336, 1120 that are not powers of two).
// Transforms are unnormalized: forward uses exp(-2*pi*i*k*t/n), inverse uses
// exp(+2*pi*i*k*t/n) without the 1/n factor. Plans are immutable after
// construction and may be shared across threads; callers pass scratch.
class Fft1d {
public:
    explicit Fft1d(int n);

    int size() const { return n_; }

    // out and in must not alias; both have length n.
    void forward(cplx* out, const cplx* in) const { work(out, in, 1, 0, tw_fwd_.data()); }
    void inverse(cplx* out, const cplx* in) const { work(out, in, 1, 0, tw_inv_.data()); }

private:
    void work(cplx* out, const cplx* in, int in_stride, int stage, const cplx* tw) const;

    int n_ = 0;
    std::vector<int> radix_;      // factor per stage
    std::vector<int> remain_;     // product of factors after each stage
    std::vector<cplx> tw_fwd_;    // exp(-2*pi*i*k/n), k in [0, n)
    std::vector<cplx> tw_inv_;
};

// Row-column 2-D FFT on a ComplexField, unnormalized like Fft1d. The OpenMP
// versions parallelize over rows/columns; holo::serial has plain-loop twins
// used by the tests and the kernel benchmark.
class Fft2d {
public:
    Fft2d(int rows, int cols);

    int rows() const { return col_fft_.size(); }
    int cols() const { return row_fft_.size(); }

    void forward(ComplexField& f) const { execute(f, false, true); }
    void inverse(ComplexField& f) const { execute(f, true, true); }
    void forward_serial(ComplexField& f) const { execute(f, false, false); }
    void inverse_serial(ComplexField& f) const { execute(f, true, false); }

private:
    void execute(ComplexField& f, bool inv, bool parallel) const;

    Fft1d row_fft_;   // length = cols
    Fft1d col_fft_;   // length = rows
};

}  // namespace holo
