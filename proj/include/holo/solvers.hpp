#pragma once

#include <string>
#include <vector>

#include "holo/objective.hpp"

namespace holo {

struct SolverConfig {
    int max_iters = 2000;
    double grad_tol = 1e-7;     // stop when ||grad||_F / n <= grad_tol (CG)
    double rho = 8.0;           // ADMM penalty
    double primal_tol = 1e-6;   // stop when ||U - F(X) - B||_F / max(1, ||B||_F) <= primal_tol
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 40;

    enum class Init { Zeros, WienerWarmStart, Given };
    Init init = Init::Zeros;
    ImageGrid init_image;  // used when init == Given

    void validate() const;
};

struct TracePoint {
    int iter = 0;
    double objective = 0.0;
    double residual = 0.0;  // grad RMS for CG, relative primal residual for ADMM
    double seconds = 0.0;
};

struct ReconResult {
    ImageGrid xhat;
    std::vector<TracePoint> trace;
    int iterations = 0;
    bool converged = false;
    std::string reason;
};

// Polak-Ribiere+ nonlinear conjugate gradient with Armijo backtracking and
// automatic restart (beta clamped at zero, steepest-descent fallback).
ReconResult solve_cg(const Problem& p, const SolverConfig& cfg);

// ADMM on the split U = F(X) + B with closed-form per-pixel field update.
ReconResult solve_admm(const Problem& p, const SolverConfig& cfg);

// Closed-form magnitude of the ADMM field update:
//   argmin_{g >= 0} g^2 - ytilde*log(g^2) + rho*(g - c_abs)^2.
double admm_magnitude_update(double c_abs, double ytilde, double rho);

// Per-pixel ADMM field update: closed form with phase C/|C| on measured
// pixels, U = C on masked ones.
void admm_update_field(const ComplexField& c, const ImageGrid& ytilde, const BeamstopMask& mask,
                       double rho, ComplexField& u);

namespace serial {
void admm_update_field(const ComplexField& c, const ImageGrid& ytilde, const BeamstopMask& mask,
                       double rho, ComplexField& u);
}  // namespace serial

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace);

}  // namespace holo
