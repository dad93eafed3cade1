#pragma once

#include "holo/detector.hpp"
#include "holo/fourier.hpp"

namespace holo {

struct ErrorReport {
    double data_relative_error = 0.0;
    double truth_relative_error = -1.0;  // < 0 when no ground truth available
    bool masked = false;

    bool has_truth() const { return truth_relative_error >= 0.0; }
};

// || mask .* |F(Xhat)+B|^2 - Ytilde ||_F / ||Ytilde||_F; the mask is the
// measurement's own beamstop (identity when there is none). Throws
// NumericError when ||Ytilde||_F = 0.
double data_relative_error(const ImageGrid& xhat, const Measurement& meas,
                           const ForwardOperator& op);

// ||Xhat - Xstar||_F / ||Xstar||_F; throws NumericError for Xstar = 0.
double truth_relative_error(const ImageGrid& xhat, const ImageGrid& xstar);

}  // namespace holo
