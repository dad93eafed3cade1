#include "holo/metrics.hpp"

#include <cmath>

#include "holo/reduce.hpp"

namespace holo {

double data_relative_error(const ImageGrid& xhat, const Measurement& meas,
                           const ForwardOperator& op) {
    ComplexField u = op.forward(xhat);
    const ComplexField& b = op.reference_field();
    const ImageGrid& ytilde = meas.noisy;
    if (u.rows != ytilde.rows || u.cols != ytilde.cols)
        throw GeometryError("data error: shapes inconsistent");

    const cplx* up = u.v.data();
    const cplx* bp = b.v.data();
    const double* yp = ytilde.v.data();
    const uint8_t* mp = meas.mask.m.data();

    const double num = block_sum(static_cast<std::ptrdiff_t>(u.size()), [&](std::ptrdiff_t i) {
        const double y = mp[i] ? std::norm(up[i] + bp[i]) : 0.0;
        const double diff = y - yp[i];
        return diff * diff;
    });
    const double den = block_sum(static_cast<std::ptrdiff_t>(u.size()),
                                 [yp](std::ptrdiff_t i) { return yp[i] * yp[i]; });
    if (den == 0.0) throw NumericError("data relative error undefined: ||Ytilde|| = 0");
    return std::sqrt(num / den);
}

double truth_relative_error(const ImageGrid& xhat, const ImageGrid& xstar) {
    if (!xhat.same_shape(xstar)) throw GeometryError("truth error: shapes differ");
    const double den = frob_norm(xstar);
    if (den == 0.0) throw NumericError("truth relative error undefined: ||Xstar|| = 0");
    const double* ap = xhat.v.data();
    const double* bp = xstar.v.data();
    const double num2 = block_sum(static_cast<std::ptrdiff_t>(xhat.size()), [&](std::ptrdiff_t i) {
        const double d = ap[i] - bp[i];
        return d * d;
    });
    return std::sqrt(num2) / den;
}

}  // namespace holo
