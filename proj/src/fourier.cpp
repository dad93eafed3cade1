#include "holo/fourier.hpp"

#include <cmath>

namespace holo {

ComplexField dft_padded(const ImageGrid& img, int m1, int m2) {
    if (m1 < img.rows || m2 < img.cols)
        throw GeometryError("DFT size smaller than image");
    ComplexField f(m1, m2);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c) f.at(r, c) = img.at(r, c);
    Fft2d plan(m1, m2);
    plan.forward(f);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m1) * m2);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(f.size()); ++i) f.v[i] *= scale;
    return f;
}

ForwardOperator::ForwardOperator(const Layout& layout)
    : n_(layout.n()),
      gap_(layout.gap),
      m1_(layout.m1()),
      m2_(layout.m2()),
      fft_(layout.m1(), layout.m2()) {
    layout.validate();
    b_ = dft_padded(embed_reference_only(layout), m1_, m2_);
}

ComplexField ForwardOperator::forward(const ImageGrid& x) const {
    if (x.rows != n_ || x.cols != n_)
        throw GeometryError("forward: specimen must be n x n");
    ComplexField f(m1_, m2_);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) f.at(r, c) = x.at(r, c);
    fft_.forward(f);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m1_) * m2_);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(f.size()); ++i) f.v[i] *= scale;
    return f;
}

ImageGrid ForwardOperator::adjoint(const ComplexField& w) const {
    if (w.rows != m1_ || w.cols != m2_)
        throw GeometryError("adjoint: field must be m1 x m2");
    ComplexField f = w;
    fft_.inverse(f);
    // unitary inverse carries the same 1/sqrt(m1*m2) factor
    const double scale = 1.0 / std::sqrt(static_cast<double>(m1_) * m2_);
    ImageGrid x(n_, n_);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) x.at(r, c) = f.at(r, c).real() * scale;
    return x;
}

}  // namespace holo
