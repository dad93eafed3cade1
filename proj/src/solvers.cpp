#include "holo/solvers.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "holo/baselines.hpp"
#include "holo/reduce.hpp"

namespace holo {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double dot(const ImageGrid& a, const ImageGrid& b) {
    const double* ap = a.v.data();
    const double* bp = b.v.data();
    return block_sum(static_cast<std::ptrdiff_t>(a.size()),
                     [ap, bp](std::ptrdiff_t i) { return ap[i] * bp[i]; });
}


ImageGrid initial_image(const Problem& p, const SolverConfig& cfg) {
    switch (cfg.init) {
        case SolverConfig::Init::Zeros:
            return ImageGrid(p.op.n(), p.op.n());
        case SolverConfig::Init::Given:
            if (p.op.n() != cfg.init_image.rows || p.op.n() != cfg.init_image.cols)
                throw ConfigError("init image has wrong size");
            return cfg.init_image;
        case SolverConfig::Init::WienerWarmStart: {
            const ImageGrid ref =
                generate_reference(p.meas.meta.ref_kind, p.meas.meta.n, p.meas.meta.pinhole_radius);
            return wiener_filter(p.meas, ref, p.meas.meta.to_layout(), FilterConfig{});
        }
    }
    return ImageGrid(p.op.n(), p.op.n());
}

}  // namespace

void SolverConfig::validate() const {
    if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
    if (!(grad_tol > 0.0)) throw ConfigError("grad_tol must be > 0");
    if (!(rho > 0.0)) throw ConfigError("rho must be > 0");
    if (!(primal_tol > 0.0)) throw ConfigError("primal_tol must be > 0");
    if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0)) throw ConfigError("armijo_c1 must be in (0,1)");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw ConfigError("backtrack factor must be in (0,1)");
    if (!(initial_step > 0.0)) throw ConfigError("initial_step must be > 0");
}

ReconResult solve_cg(const Problem& p, const SolverConfig& cfg) {
    cfg.validate();
    const auto t0 = clock_type::now();
    const int n = p.op.n();
    const ComplexField& b = p.op.reference_field();
    const ImageGrid& ytilde = p.meas.noisy;
    const BeamstopMask& mask = p.meas.mask;
    const std::ptrdiff_t npix = static_cast<std::ptrdiff_t>(b.size());

    ReconResult res;
    ImageGrid x = initial_image(p, cfg);

    // u = F(x) + B is carried across iterations; line-search trials move
    // along v = F(dir) pointwise, so they cost no transforms and the Armijo
    // decrease is evaluated without cancellation against a large |f|.
    auto field_at = [&](const ImageGrid& img) {
        ComplexField u = p.op.forward(img);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i) u.v[i] += b.v[i];
        return u;
    };
    auto gradient_of = [&](const ComplexField& u) {
        ComplexField t;
        residual_field(u, ytilde, mask, t);
        return p.op.adjoint(t);
    };

    ComplexField u = field_at(x);
    double f = nll_from_field(u, ytilde, mask);
    ImageGrid g = gradient_of(u);

    ImageGrid dir(n, n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i) dir.v[i] = -g.v[i];

    res.converged = false;
    res.reason = "max iterations reached";

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const double grad_rms = frob_norm(g) / n;
        res.trace.push_back({iter, f, grad_rms, seconds_since(t0)});
        if (grad_rms <= cfg.grad_tol) {
            res.converged = true;
            res.reason = "gradient tolerance reached";
            break;
        }

        double g_dot_d = dot(g, dir);
        bool steepest = false;
        if (g_dot_d >= 0.0) {
            // not a descent direction: restart with steepest descent
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i)
                dir.v[i] = -g.v[i];
            g_dot_d = -dot(g, g);
            steepest = true;
        }

        ComplexField v = p.op.forward(dir);
        double alpha = 0.0, delta = 0.0;
        bool accepted = false;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            // exact minimizer of the quadratic part as the first trial step
            const double curv = masked_norm2(v, mask);
            alpha = cfg.initial_step * (curv > 0.0 ? -g_dot_d / curv : 1.0);
            for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
                delta = nll_delta_along(u, v, ytilde, mask, alpha);
                if (delta <= cfg.armijo_c1 * alpha * g_dot_d) {
                    accepted = true;
                    break;
                }
                alpha *= cfg.backtrack;
            }
            if (!accepted && attempt == 0 && !steepest) {
#pragma omp parallel for schedule(static)
                for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i)
                    dir.v[i] = -g.v[i];
                g_dot_d = -dot(g, g);
                v = p.op.forward(dir);
                steepest = true;
            }
        }
        if (!accepted) {
            res.reason = "line search failed";
            break;
        }
        // forward extension: trials are pointwise, so probe doublings and
        // keep the lowest objective (crosses the shallow log-term barriers
        // that trap a pure backtracking step)
        for (double a2 = 2.0 * alpha; a2 <= 1e6 * alpha; a2 *= 2.0) {
            const double d2 = nll_delta_along(u, v, ytilde, mask, a2);
            if (!(d2 < delta)) break;
            alpha = a2;
            delta = d2;
        }

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
            x.v[i] += alpha * dir.v[i];
        if ((iter + 1) % 64 == 0) {
            u = field_at(x);  // refresh against incremental drift
        } else {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < npix; ++i) u.v[i] += alpha * v.v[i];
        }
        // accumulate the accepted decreases; keeps the recorded objective
        // exactly nonincreasing (a fresh nll(u) could tick up by fp drift)
        f += delta;

        ImageGrid g_new = gradient_of(u);

        // Polak-Ribiere+ with restart via the max(0, .) clamp
        const double denom = dot(g, g);
        double beta = 0.0;
        if (denom > 0.0) {
            ImageGrid diff(n, n);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i)
                diff.v[i] = g_new.v[i] - g.v[i];
            beta = std::max(0.0, dot(g_new, diff) / denom);
        }
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g.size()); ++i)
            dir.v[i] = -g_new.v[i] + beta * dir.v[i];
        g = std::move(g_new);
    }

    if (res.trace.empty() || res.trace.back().objective != f)
        res.trace.push_back({static_cast<int>(res.trace.size()), f, frob_norm(g) / n,
                             seconds_since(t0)});
    res.xhat = std::move(x);
    res.iterations = static_cast<int>(res.trace.size()) - 1;
    return res;
}

double admm_magnitude_update(double c_abs, double ytilde, double rho) {
    return (rho * c_abs + std::sqrt(rho * rho * c_abs * c_abs + 4.0 * (1.0 + rho) * ytilde)) /
           (2.0 * (1.0 + rho));
}

namespace {

inline cplx admm_pixel(const cplx& c, double ytilde, bool measured, double rho) {
    if (!measured) return c;  // no data term, pure quadratic penalty
    const double c_abs = std::abs(c);
    const double gamma = admm_magnitude_update(c_abs, ytilde, rho);
    if (c_abs == 0.0) return cplx{gamma, 0.0};
    return c * (gamma / c_abs);
}

}  // namespace

void admm_update_field(const ComplexField& c, const ImageGrid& ytilde, const BeamstopMask& mask,
                       double rho, ComplexField& u) {
    if (!u.same_shape(c)) u = ComplexField(c.rows, c.cols);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(c.size()); ++i)
        u.v[i] = admm_pixel(c.v[i], ytilde.v[i], mask.m[static_cast<size_t>(i)] != 0, rho);
}

namespace serial {

void admm_update_field(const ComplexField& c, const ImageGrid& ytilde, const BeamstopMask& mask,
                       double rho, ComplexField& u) {
    u = ComplexField(c.rows, c.cols);
    for (size_t i = 0; i < c.size(); ++i)
        u.v[i] = admm_pixel(c.v[i], ytilde.v[i], mask.m[i] != 0, rho);
}

}  // namespace serial

ReconResult solve_admm(const Problem& p, const SolverConfig& cfg) {
    cfg.validate();
    const auto t0 = clock_type::now();
    const double rho = cfg.rho;
    const ComplexField& b = p.op.reference_field();
    const ImageGrid& ytilde = p.meas.noisy;
    const BeamstopMask& mask = p.meas.mask;
    const std::ptrdiff_t npix = static_cast<std::ptrdiff_t>(b.size());

    ReconResult res;
    ImageGrid x = initial_image(p, cfg);
    ComplexField fx = p.op.forward(x);
    ComplexField v(b.rows, b.cols);
    ComplexField c(b.rows, b.cols), u(b.rows, b.cols), w(b.rows, b.cols);

    const double bscale = std::max(1.0, frob_norm(b));
    res.converged = false;
    res.reason = "max iterations reached";

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        // C = F(X) + B - V/rho
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i)
            c.v[i] = fx.v[i] + b.v[i] - v.v[i] / rho;

        admm_update_field(c, ytilde, mask, rho, u);

        // X = Re(F_dagger(U + V/rho - B))
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i)
            w.v[i] = u.v[i] + v.v[i] / rho - b.v[i];
        x = p.op.adjoint(w);
        fx = p.op.forward(x);

        // dual ascent and primal residual share U - F(X) - B
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i)
            w.v[i] = u.v[i] - fx.v[i] - b.v[i];
        const double primal = frob_norm(w) / bscale;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i)
            v.v[i] += rho * w.v[i];

        // objective at the current image, reusing F(X)
        ComplexField ufield = fx;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < npix; ++i) ufield.v[i] += b.v[i];
        const double f = nll_from_field(ufield, ytilde, mask);

        res.trace.push_back({iter, f, primal, seconds_since(t0)});
        if (primal <= cfg.primal_tol) {
            res.converged = true;
            res.reason = "primal residual tolerance reached";
            break;
        }
    }

    res.xhat = std::move(x);
    res.iterations = static_cast<int>(res.trace.size());
    return res;
}

void write_trace_csv(const std::string& path, const std::vector<TracePoint>& trace) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trace CSV: " + path);
    out << "iter,objective,residual,elapsed_seconds\n";
    out.precision(17);
    for (const TracePoint& t : trace)
        out << t.iter << ',' << t.objective << ',' << t.residual << ',' << t.seconds << '\n';
}

}  // namespace holo
