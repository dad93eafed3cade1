#include "holo/types.hpp"

#include <cmath>

#include "holo/reduce.hpp"

namespace holo {

double frob_norm(const ImageGrid& a) {
    const double* p = a.v.data();
    return std::sqrt(block_sum(static_cast<std::ptrdiff_t>(a.size()),
                               [p](std::ptrdiff_t i) { return p[i] * p[i]; }));
}

double frob_norm(const ComplexField& a) {
    const cplx* p = a.v.data();
    return std::sqrt(block_sum(static_cast<std::ptrdiff_t>(a.size()),
                               [p](std::ptrdiff_t i) { return std::norm(p[i]); }));
}

bool all_finite(const ImageGrid& a) {
    for (double x : a.v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(const ComplexField& a) {
    for (const cplx& z : a.v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace holo
