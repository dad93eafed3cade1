#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holo/baselines.hpp"
#include "holo/metrics.hpp"
#include "holo/phantoms.hpp"
#include "holo/solvers.hpp"
#include "oracles.hpp"

using holo::FilterConfig;
using holo::ImageGrid;
using holo::Layout;
using holo::LayoutMeta;
using holo::Measurement;

namespace {

struct Instance {
    Layout layout;
    LayoutMeta meta;
    Measurement meas;
};

Instance make_instance(int n, double np, uint64_t seed, double os = 2.0, int gap = -1,
                       int beamstop_k = 0) {
    Instance inst;
    inst.meta = LayoutMeta{n, gap < 0 ? n : gap, os, os, holo::ReferenceKind::Ura, 0};
    inst.layout = inst.meta.to_layout();
    inst.layout.specimen = holo::make_phantom("disc", n);
    inst.meas = holo::simulate_measurement(inst.layout, inst.meta, beamstop_k, np, seed);
    return inst;
}

}  // namespace

TEST_CASE("noiseless inverse filtering is exact (data error <= 1e-6)") {
    for (int n : {32, 64}) {
        Instance inst = make_instance(n, 0.0, 1);
        ImageGrid xhat = inverse_filter(inst.meas, inst.layout.reference, inst.layout);
        holo::ForwardOperator op(inst.layout);
        const double err = holo::data_relative_error(xhat, inst.meas, op);
        INFO("n=", n, " data err ", err);
        CHECK(err <= 1e-6);
        CHECK(holo::truth_relative_error(xhat, inst.layout.specimen) <= 1e-6);
    }
}

TEST_CASE("wiener converges to the inverse filter as lambda -> 0") {
    Instance inst = make_instance(32, 0.0, 2);
    ImageGrid inv = inverse_filter(inst.meas, inst.layout.reference, inst.layout);
    FilterConfig cfg;
    cfg.wiener_lambda = 1e-12;
    ImageGrid wie = wiener_filter(inst.meas, inst.layout.reference, inst.layout, cfg);
    CHECK(oracle::rel_err(wie, inv) <= 1e-6);
}

TEST_CASE("geometry preconditions are enforced before any work") {
    Instance low_os = make_instance(16, 1.0, 3, 1.5);
    CHECK_THROWS_AS(inverse_filter(low_os.meas, low_os.layout.reference, low_os.layout),
                    holo::GeometryError);
    CHECK_THROWS_AS(wiener_filter(low_os.meas, low_os.layout.reference, low_os.layout),
                    holo::GeometryError);

    Instance close = make_instance(16, 1.0, 4, 2.0, 8);  // gap d = n/2 < n
    CHECK_THROWS_AS(inverse_filter(close.meas, close.layout.reference, close.layout),
                    holo::GeometryError);
}

TEST_CASE("at Np = 1 both baselines are worse than ML-CG") {
    Instance inst = make_instance(32, 1.0, 5);
    holo::Problem prob(inst.meas);
    holo::SolverConfig scfg;
    holo::ReconResult cg = holo::solve_cg(prob, scfg);
    const double cg_err = holo::data_relative_error(cg.xhat, inst.meas, prob.op);

    ImageGrid inv = inverse_filter(inst.meas, inst.layout.reference, inst.layout);
    ImageGrid wie = wiener_filter(inst.meas, inst.layout.reference, inst.layout);
    const double inv_err = holo::data_relative_error(inv, inst.meas, prob.op);
    const double wie_err = holo::data_relative_error(wie, inst.meas, prob.op);
    INFO("cg=", cg_err, " inverse=", inv_err, " wiener=", wie_err);
    CHECK(cg_err < inv_err);
    CHECK(cg_err < wie_err);
}

TEST_CASE("wiener beats the plain inverse filter at moderate noise") {
    Instance inst = make_instance(32, 1000.0, 6);
    holo::ForwardOperator op(inst.layout);
    ImageGrid inv = inverse_filter(inst.meas, inst.layout.reference, inst.layout);
    ImageGrid wie = wiener_filter(inst.meas, inst.layout.reference, inst.layout);
    CHECK(holo::data_relative_error(wie, inst.meas, op) <=
          holo::data_relative_error(inv, inst.meas, op));
}

TEST_CASE("at heavy noise some lambda makes wiener strictly better") {
    Instance inst = make_instance(32, 0.1, 7);
    holo::ForwardOperator op(inst.layout);
    const double inv_err =
        holo::data_relative_error(inverse_filter(inst.meas, inst.layout.reference, inst.layout),
                                  inst.meas, op);
    bool improved = false;
    for (double lam : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
        FilterConfig cfg;
        cfg.wiener_lambda = lam;
        const double err = holo::data_relative_error(
            wiener_filter(inst.meas, inst.layout.reference, inst.layout, cfg), inst.meas, op);
        if (err < inv_err) {
            improved = true;
            break;
        }
    }
    CHECK(improved);
}

TEST_CASE("beamstopped bins enter as zeros and degrade the baselines") {
    Instance clean = make_instance(32, 0.0, 8);
    Instance stopped = make_instance(32, 0.0, 8, 2.0, -1, 7);
    holo::ForwardOperator op(clean.layout);
    const double err_clean = holo::data_relative_error(
        inverse_filter(clean.meas, clean.layout.reference, clean.layout), clean.meas, op);
    const double err_stopped = holo::data_relative_error(
        inverse_filter(stopped.meas, stopped.layout.reference, stopped.layout), stopped.meas, op);
    CHECK(err_clean <= 1e-6);
    CHECK(err_stopped > 10.0 * err_clean);
}
