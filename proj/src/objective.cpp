#include "holo/objective.hpp"

#include <cmath>

#include "holo/reduce.hpp"

namespace holo {

Problem::Problem(Measurement m) : meas(std::move(m)), op(meas.meta.to_layout()) {
    if (meas.noisy.rows != op.m1() || meas.noisy.cols != op.m2())
        throw GeometryError("measurement dims do not match geometry");
    if (!op.reference_field().same_shape(ComplexField(meas.noisy.rows, meas.noisy.cols)))
        throw GeometryError("reference field dims do not match data");
    if (meas.mask.masked_count() == meas.noisy.size())
        throw DataError("measured set is empty");
    if (!all_finite(meas.noisy)) throw DataError("measurement contains non-finite values");
}

namespace {

inline double nll_term(const cplx& u, double ytilde) {
    const double mag2 = std::norm(u);
    return mag2 - ytilde * std::log(std::max(mag2, Problem::kEps));
}

// u - Ytilde / conj(u), guarded: u * (1 - Ytilde / max(|u|^2, eps))
inline cplx residual_term(const cplx& u, double ytilde) {
    const double mag2 = std::max(std::norm(u), Problem::kEps);
    return u * (1.0 - ytilde / mag2);
}

}  // namespace

double nll_from_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask) {
    const cplx* up = u.v.data();
    const double* yp = ytilde.v.data();
    const uint8_t* mp = mask.m.data();
    const double s = block_sum(static_cast<std::ptrdiff_t>(u.size()), [&](std::ptrdiff_t i) {
        return mp[i] ? nll_term(up[i], yp[i]) : 0.0;
    });
    return 0.5 * s;
}

void residual_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask,
                    ComplexField& t) {
    if (!t.same_shape(u)) t = ComplexField(u.rows, u.cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(u.size()); ++i)
        t.v[i] = mask.m[static_cast<size_t>(i)] ? residual_term(u.v[i], ytilde.v[i]) : cplx{0.0, 0.0};
}

double nll_delta_along(const ComplexField& u, const ComplexField& v, const ImageGrid& ytilde,
                       const BeamstopMask& mask, double alpha) {
    const cplx* up = u.v.data();
    const cplx* vp = v.v.data();
    const double* yp = ytilde.v.data();
    const uint8_t* mp = mask.m.data();
    const double s = block_sum(static_cast<std::ptrdiff_t>(u.size()), [&](std::ptrdiff_t i) {
        if (!mp[i]) return 0.0;
        const cplx& a = up[i];
        const cplx& b = vp[i];
        // |a + alpha b|^2 - |a|^2 without forming the large squares
        const double quad = alpha * (2.0 * (a.real() * b.real() + a.imag() * b.imag()) +
                                     alpha * std::norm(b));
        double log_term = 0.0;
        if (yp[i] != 0.0) {
            const double m2_raw = std::norm(a);
            const double m2a_raw = m2_raw + quad;
            if (m2_raw >= Problem::kEps && m2a_raw >= Problem::kEps)
                log_term = yp[i] * std::log1p(quad / m2_raw);
            else
                log_term = yp[i] * std::log(std::max(m2a_raw, Problem::kEps) /
                                            std::max(m2_raw, Problem::kEps));
        }
        return quad - log_term;
    });
    return 0.5 * s;
}

double masked_norm2(const ComplexField& v, const BeamstopMask& mask) {
    const cplx* vp = v.v.data();
    const uint8_t* mp = mask.m.data();
    return block_sum(static_cast<std::ptrdiff_t>(v.size()),
                     [&](std::ptrdiff_t i) { return mp[i] ? std::norm(vp[i]) : 0.0; });
}

namespace serial {

double nll_from_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask) {
    double s = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
        if (mask.m[i]) s += nll_term(u.v[i], ytilde.v[i]);
    return 0.5 * s;
}

void residual_field(const ComplexField& u, const ImageGrid& ytilde, const BeamstopMask& mask,
                    ComplexField& t) {
    t = ComplexField(u.rows, u.cols);
    for (size_t i = 0; i < u.size(); ++i)
        t.v[i] = mask.m[i] ? residual_term(u.v[i], ytilde.v[i]) : cplx{0.0, 0.0};
}

}  // namespace serial

namespace {

ComplexField field_at(const Problem& p, const ImageGrid& x) {
    if (!all_finite(x)) throw NumericError("objective evaluated at non-finite image");
    ComplexField u = p.op.forward(x);
    const ComplexField& b = p.op.reference_field();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(u.size()); ++i) u.v[i] += b.v[i];
    return u;
}

}  // namespace

double nll(const Problem& p, const ImageGrid& x) {
    const ComplexField u = field_at(p, x);
    return nll_from_field(u, p.meas.noisy, p.meas.mask);
}

ImageGrid grad(const Problem& p, const ImageGrid& x) {
    const ComplexField u = field_at(p, x);
    ComplexField t;
    residual_field(u, p.meas.noisy, p.meas.mask, t);
    return p.op.adjoint(t);
}

double nll_grad(const Problem& p, const ImageGrid& x, ImageGrid& g) {
    const ComplexField u = field_at(p, x);
    const double f = nll_from_field(u, p.meas.noisy, p.meas.mask);
    ComplexField t;
    residual_field(u, p.meas.noisy, p.meas.mask, t);
    g = p.op.adjoint(t);
    return f;
}

}  // namespace holo
