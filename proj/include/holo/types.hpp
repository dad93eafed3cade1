#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace holo {

using cplx = std::complex<double>;

// Thrown when sizes, separations or oversampling factors are inconsistent,
// or when a method's geometric preconditions are not met.
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user-supplied parameter or config file.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid numerical data fed into the pipeline (negative intensities, NaNs).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure during a computation (undefined metric, non-finite state).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Real matrix, row-major. Used both for images (values nominally in [0,1])
// and for detector-plane intensity arrays.
struct ImageGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    ImageGrid() = default;
    ImageGrid(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
    size_t size() const { return v.size(); }

    bool same_shape(const ImageGrid& o) const { return rows == o.rows && cols == o.cols; }
};

// Complex matrix, row-major, standard DFT index order (index 0 = zero
// frequency). The centered view maps index k to the signed frequency
// k <= m/2 ? k : k - m, i.e. frequencies in [-m/2, m/2).
struct ComplexField {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> v;

    ComplexField() = default;
    ComplexField(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, cplx{0.0, 0.0}) {}

    cplx& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    cplx at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
    size_t size() const { return v.size(); }

    bool same_shape(const ComplexField& o) const { return rows == o.rows && cols == o.cols; }
};

// Signed centered frequency for storage index k on an axis of length m.
inline int centered_freq(int k, int m) { return k <= (m - 1) / 2 ? k : k - m; }

double frob_norm(const ImageGrid& a);
double frob_norm(const ComplexField& a);
bool all_finite(const ImageGrid& a);
bool all_finite(const ComplexField& a);

}  // namespace holo
