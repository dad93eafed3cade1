#include "holo/fft.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

Fft1d::Fft1d(int n) : n_(n) {
    if (n < 1) throw GeometryError("FFT length must be >= 1");
    tw_fwd_.resize(n);
    tw_inv_.resize(n);
    for (int k = 0; k < n; ++k) {
        const double a = -2.0 * kPi * k / n;
        tw_fwd_[k] = cplx{std::cos(a), std::sin(a)};
        tw_inv_[k] = std::conj(tw_fwd_[k]);
    }
    int rem = n;
    while (rem > 1) {
        int p;
        if (rem % 4 == 0) {
            p = 4;
        } else if (rem % 2 == 0) {
            p = 2;
        } else if (rem % 3 == 0) {
            p = 3;
        } else {
            p = 5;
            while (p * p <= rem && rem % p != 0) p += 2;
            if (p * p > rem) p = rem;  // rem is prime
        }
        rem /= p;
        radix_.push_back(p);
        remain_.push_back(rem);
    }
}

// Recursive Cooley-Tukey. At each stage the sub-transform length is L = p*m
// and the input stride is s = n/L, so exp(-2*pi*i*x/L) = tw[(x*s) % n].
void Fft1d::work(cplx* out, const cplx* in, int in_stride, int stage, const cplx* tw) const {
    if (n_ == 1) {
        out[0] = in[0];
        return;
    }
    const int p = radix_[stage];
    const int m = remain_[stage];

    if (m == 1) {
        for (int q = 0; q < p; ++q) out[q] = in[static_cast<size_t>(q) * in_stride];
    } else {
        for (int q = 0; q < p; ++q)
            work(out + static_cast<size_t>(q) * m, in + static_cast<size_t>(q) * in_stride,
                 in_stride * p, stage + 1, tw);
    }

    const int s = in_stride;  // == n_ / (p*m)
    switch (p) {
        case 2:
            for (int j = 0; j < m; ++j) {
                const cplx t = out[m + j] * tw[static_cast<size_t>(s) * j];
                out[m + j] = out[j] - t;
                out[j] += t;
            }
            break;
        case 4:
            for (int j = 0; j < m; ++j) {
                const cplx t1 = out[m + j] * tw[static_cast<size_t>(s) * j];
                const cplx t2 = out[2 * m + j] * tw[2 * static_cast<size_t>(s) * j];
                const cplx t3 = out[3 * m + j] * tw[3 * static_cast<size_t>(s) * j];
                const cplx a = out[j] + t2;
                const cplx b = out[j] - t2;
                const cplx c = t1 + t3;
                // exp(-2*pi*i/4) = -i forward; the table's sign decides direction
                const cplx d = (t1 - t3) * tw[static_cast<size_t>(n_) / 4];
                out[j] = a + c;
                out[m + j] = b + d;
                out[2 * m + j] = a - c;
                out[3 * m + j] = b - d;
            }
            break;
        case 3: {
            const cplx w = tw[static_cast<size_t>(n_) / 3];  // exp(-+2*pi*i/3)
            for (int j = 0; j < m; ++j) {
                const cplx t1 = out[m + j] * tw[static_cast<size_t>(s) * j];
                const cplx t2 = out[2 * m + j] * tw[2 * static_cast<size_t>(s) * j];
                const cplx sum = t1 + t2;
                const cplx dif = (t1 - t2) * cplx{0.0, w.imag()};
                const cplx y0 = out[j];
                out[j] = y0 + sum;
                out[m + j] = y0 - 0.5 * sum + dif;
                out[2 * m + j] = y0 - 0.5 * sum - dif;
            }
            break;
        }
        default: {
            // generic prime radix, O(p^2) per output column
            std::vector<cplx> a(static_cast<size_t>(p));
            for (int j = 0; j < m; ++j) {
                for (int q = 0; q < p; ++q) a[static_cast<size_t>(q)] = out[static_cast<size_t>(q) * m + j];
                for (int c = 0; c < p; ++c) {
                    const int step = static_cast<int>((static_cast<long long>(s) * (j + static_cast<long long>(c) * m)) % n_);
                    cplx acc = a[0];
                    int twidx = 0;
                    for (int q = 1; q < p; ++q) {
                        twidx += step;
                        if (twidx >= n_) twidx -= n_;
                        acc += a[static_cast<size_t>(q)] * tw[static_cast<size_t>(twidx)];
                    }
                    out[static_cast<size_t>(c) * m + j] = acc;
                }
            }
            break;
        }
    }
}

Fft2d::Fft2d(int rows, int cols) : row_fft_(cols), col_fft_(rows) {}

void Fft2d::execute(ComplexField& f, bool inv, bool parallel) const {
    const int rows = f.rows;
    const int cols = f.cols;
    if (cols != row_fft_.size() || rows != col_fft_.size())
        throw GeometryError("Fft2d: field shape does not match plan");

    auto row_pass = [&](int r, std::vector<cplx>& scratch) {
        cplx* row = f.v.data() + static_cast<size_t>(r) * cols;
        std::copy(row, row + cols, scratch.begin());
        if (inv)
            row_fft_.inverse(row, scratch.data());
        else
            row_fft_.forward(row, scratch.data());
    };
    auto col_pass = [&](int c, std::vector<cplx>& in, std::vector<cplx>& out) {
        for (int r = 0; r < rows; ++r) in[static_cast<size_t>(r)] = f.at(r, c);
        if (inv)
            col_fft_.inverse(out.data(), in.data());
        else
            col_fft_.forward(out.data(), in.data());
        for (int r = 0; r < rows; ++r) f.at(r, c) = out[static_cast<size_t>(r)];
    };

    if (parallel) {
#pragma omp parallel
        {
            std::vector<cplx> s1(static_cast<size_t>(cols));
#pragma omp for schedule(static)
            for (int r = 0; r < rows; ++r) row_pass(r, s1);
        }
#pragma omp parallel
        {
            std::vector<cplx> s1(static_cast<size_t>(rows)), s2(static_cast<size_t>(rows));
#pragma omp for schedule(static)
            for (int c = 0; c < cols; ++c) col_pass(c, s1, s2);
        }
    } else {
        std::vector<cplx> s1(static_cast<size_t>(std::max(rows, cols)));
        std::vector<cplx> s2(static_cast<size_t>(rows));
        for (int r = 0; r < rows; ++r) row_pass(r, s1);
        for (int c = 0; c < cols; ++c) col_pass(c, s1, s2);
    }
}

}  // namespace holo
