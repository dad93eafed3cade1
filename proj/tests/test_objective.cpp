#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holo/objective.hpp"
#include "oracles.hpp"

using holo::BeamstopMask;
using holo::ImageGrid;
using holo::Layout;
using holo::LayoutMeta;
using holo::Measurement;
using holo::Problem;

namespace {

// Real random instance: URA reference, simulated noisy data.
Problem random_problem(int n, double np, int beamstop_k, uint64_t seed) {
    LayoutMeta meta{n, n, 2.0, 2.0, holo::ReferenceKind::Ura, 0};
    Layout layout = meta.to_layout();
    layout.specimen = oracle::random_image(n, n, static_cast<unsigned>(seed));
    return Problem(holo::simulate_measurement(layout, meta, beamstop_k, np, seed));
}

double brute_nll(const Problem& p, const ImageGrid& x) {
    holo::ComplexField u = p.op.forward(x);
    double acc = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!p.meas.mask.m[i]) continue;
        const double m2 = std::norm(u.v[i] + p.op.reference_field().v[i]);
        acc += m2 - p.meas.noisy.v[i] * std::log(std::max(m2, Problem::kEps));
    }
    return 0.5 * acc;
}

}  // namespace

TEST_CASE("zero data reduces to the pure quadratic") {
    Problem p = random_problem(8, 0.0, 0, 3);
    Problem q = p;  // same geometry, zeroed data
    for (double& v : q.meas.noisy.v) v = 0.0;
    ImageGrid x = oracle::random_image(8, 8, 11, -0.5, 1.0);
    holo::ComplexField u = q.op.forward(x);
    double quad = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
        quad += std::norm(u.v[i] + q.op.reference_field().v[i]);
    CHECK(nll(q, x) == doctest::Approx(0.5 * quad).epsilon(1e-12));

    // and the gradient becomes X + Re(F^dagger B)
    ImageGrid g = grad(q, x);
    ImageGrid fb = q.op.adjoint(q.op.reference_field());
    for (size_t i = 0; i < g.size(); ++i)
        CHECK(g.v[i] == doctest::Approx(x.v[i] + fb.v[i]).epsilon(1e-10));
}

TEST_CASE("single measured pixel: nll(t) = (t^2 - log t^2)/2, minimum at |t| = 1") {
    // mask out everything except one off-DC pixel and steer u there via B
    Problem p = random_problem(8, 0.0, 0, 9);
    for (auto& m : p.meas.mask.m) m = 0;
    const size_t pix = 5;
    p.meas.mask.m[pix] = 1;
    for (double& v : p.meas.noisy.v) v = 0.0;
    p.meas.noisy.v[pix] = 1.0;

    auto nll_at = [&](double t) {
        Problem q = p;
        // zero image, so u = B; overwrite B's pixel through a copy
        holo::ComplexField& b = const_cast<holo::ComplexField&>(q.op.reference_field());
        for (auto& z : b.v) z = 0.0;
        b.v[pix] = t;
        return nll(q, ImageGrid(8, 8));
    };
    for (double t : {0.4, 0.9, 1.0, 1.7}) {
        const double want = 0.5 * (t * t - std::log(t * t));
        CHECK(nll_at(t) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(nll_at(1.0) < nll_at(0.9));
    CHECK(nll_at(1.0) < nll_at(1.1));
}

TEST_CASE("gradient matches central finite differences on random 8x8 problems") {
    const double h = 1e-5;
    int checked = 0;
    for (int k = 0; k < 20; ++k) {
        const int beamstop = (k % 2 == 0) ? 0 : 3;
        Problem p = random_problem(8, 1.0, beamstop, 100 + k);
        ImageGrid x = oracle::random_image(8, 8, 500 + k, 0.0, 1.0);
        ImageGrid g = grad(p, x);
        ImageGrid g_fd(8, 8);
        for (size_t i = 0; i < x.size(); ++i) {
            ImageGrid xp = x, xm = x;
            xp.v[i] += h;
            xm.v[i] -= h;
            g_fd.v[i] = (nll(p, xp) - nll(p, xm)) / (2.0 * h);
        }
        const double err = oracle::rel_err(g, g_fd);
        INFO("instance ", k, " rel err ", err);
        CHECK(err <= 1e-5);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("noiseless consistent data is a stationary point") {
    LayoutMeta meta{16, 16, 2.0, 2.0, holo::ReferenceKind::Ura, 0};
    Layout layout = meta.to_layout();
    layout.specimen = oracle::random_image(16, 16, 8);
    Problem p(holo::simulate_measurement(layout, meta, 0, 0.0, 1));  // np = 0: noiseless
    ImageGrid g = grad(p, layout.specimen);
    CHECK(holo::frob_norm(g) <= 1e-8 * holo::frob_norm(layout.specimen));
}

TEST_CASE("masked pixels contribute nothing, bit for bit") {
    Problem p = random_problem(8, 1.0, 3, 77);
    ImageGrid x = oracle::random_image(8, 8, 78);
    const double f0 = nll(p, x);
    ImageGrid g0 = grad(p, x);
    Problem q = p;
    for (size_t i = 0; i < q.meas.noisy.size(); ++i)
        if (!q.meas.mask.m[i]) q.meas.noisy.v[i] = 1e6;  // junk on masked pixels
    CHECK(nll(q, x) == f0);
    ImageGrid g1 = grad(q, x);
    for (size_t i = 0; i < g0.size(); ++i) CHECK(g0.v[i] == g1.v[i]);
}

TEST_CASE("objective matches a brute-force evaluation and descends along -grad") {
    Problem p = random_problem(8, 10.0, 0, 13);
    ImageGrid x = oracle::random_image(8, 8, 14);
    CHECK(nll(p, x) == doctest::Approx(brute_nll(p, x)).epsilon(1e-12));

    ImageGrid g = grad(p, x);
    const double f0 = nll(p, x);
    bool decreased = false;
    for (double alpha : {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125}) {
        ImageGrid xs = x;
        for (size_t i = 0; i < xs.size(); ++i) xs.v[i] -= alpha * g.v[i];
        if (nll(p, xs) < f0) {
            decreased = true;
            break;
        }
    }
    CHECK(decreased);
}

TEST_CASE("pointwise objective difference agrees with direct subtraction") {
    Problem p = random_problem(8, 1.0, 3, 55);
    ImageGrid x = oracle::random_image(8, 8, 21);
    ImageGrid d = oracle::random_image(8, 8, 22, -1.0, 1.0);
    holo::ComplexField u = p.op.forward(x);
    for (size_t i = 0; i < u.size(); ++i) u.v[i] += p.op.reference_field().v[i];
    holo::ComplexField v = p.op.forward(d);
    for (double alpha : {1e-3, 0.1, 1.0}) {
        ImageGrid xs = x;
        for (size_t i = 0; i < xs.size(); ++i) xs.v[i] += alpha * d.v[i];
        const double direct = nll(p, xs) - nll(p, x);
        const double delta = holo::nll_delta_along(u, v, p.meas.noisy, p.meas.mask, alpha);
        CHECK(delta == doctest::Approx(direct).epsilon(1e-7));
    }
}

TEST_CASE("problem validation") {
    Problem p = random_problem(8, 1.0, 0, 1);
    Measurement all_masked = p.meas;
    for (auto& m : all_masked.mask.m) m = 0;
    CHECK_THROWS_AS(Problem{all_masked}, holo::DataError);

    ImageGrid bad(8, 8);
    bad.v[3] = std::nan("");
    CHECK_THROWS_AS(nll(p, bad), holo::NumericError);
}
