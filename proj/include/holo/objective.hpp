#pragma once

#include "holo/detector.hpp"
#include "holo/fourier.hpp"

namespace holo {

// Negative log-likelihood fit of an image against Poisson-noised Fourier
// magnitudes, restricted to the measured (non-beamstopped) set:
//   nll(X) = 1/2 * sum_M ( |u|^2 - Ytilde * log(max(|u|^2, eps)) ),
//   u = F(X) + B.
// The dropped log(Ytilde!) constant and the Np/Ybar scale do not move the
// minimizer, so reported values are unique only up to an additive constant
// and positive scale.
struct Problem {
    Measurement meas;
    ForwardOperator op;

    explicit Problem(Measurement m);

    // floor for |u|^2 inside the log and the Ytilde/conj(u) quotient
    static constexpr double kEps = 1e-12;
};

double nll(const Problem& p, const ImageGrid& x);
ImageGrid grad(const Problem& p, const ImageGrid& x);

// One forward and one adjoint transform for both values.
double nll_grad(const Problem& p, const ImageGrid& x, ImageGrid& g);

// Internal kernels shared with the serial reference path (benchmark + tests).
double nll_from_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask);
void residual_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask,
                    ComplexField& t);

// nll(u + alpha*v) - nll(u) on the measured set, accumulated per pixel so the
// difference keeps full relative precision even when |nll| is large (plain
// f(x+ad) - f(x) hits the double-precision wall near stationary points and
// freezes the line search). v is the field image of the search direction, so
// backtracking trials cost no transforms.
double nll_delta_along(const ComplexField& u, const ComplexField& v, const ImageGrid& ytilde,
                       const BeamstopMask& mask, double alpha);

// sum over measured pixels of |v|^2 (curvature of the quadratic term along v)
double masked_norm2(const ComplexField& v, const BeamstopMask& mask);

namespace serial {
double nll_from_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask);
void residual_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask,
                    ComplexField& t);
}  // namespace serial

}  // namespace holo
