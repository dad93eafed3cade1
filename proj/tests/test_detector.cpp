#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "holo/detector.hpp"
#include "holo/measurement_io.hpp"
#include "oracles.hpp"

using holo::BeamstopMask;
using holo::ImageGrid;
using holo::Layout;
using holo::LayoutMeta;
using holo::Measurement;

namespace {

Layout random_layout(int n, unsigned seed) {
    Layout layout;
    layout.specimen = oracle::random_image(n, n, seed);
    layout.reference = oracle::random_image(n, n, seed + 1);
    layout.gap = n;
    return layout;
}

// central-moment expectations for Ytilde = s * Pois(lambda)
struct PoisMoments {
    double mean, var, se_mean, se_var;
};
PoisMoments expected_moments(double lambda, double s, double n_draws) {
    PoisMoments m;
    m.mean = s * lambda;
    m.var = s * s * lambda;
    const double mu4 = s * s * s * s * (lambda + 3.0 * lambda * lambda);
    m.se_mean = std::sqrt(m.var / n_draws);
    m.se_var = std::sqrt((mu4 - m.var * m.var * (n_draws - 3.0) / (n_draws - 1.0)) / n_draws);
    return m;
}

}  // namespace

TEST_CASE("clean intensity: zero layout and unit impulse") {
    Layout zero;
    zero.specimen = ImageGrid(2, 2);
    zero.reference = ImageGrid(2, 2);
    zero.gap = 0;
    for (double y : clean_intensity(zero).v) CHECK(y == 0.0);

    Layout impulse;
    impulse.specimen = ImageGrid(1, 1);
    impulse.specimen.at(0, 0) = 1.0;
    impulse.reference = ImageGrid(1, 1);
    impulse.gap = 0;
    impulse.os_x = 2.0;
    impulse.os_y = 1.0;  // detector 2 x 2
    ImageGrid y = clean_intensity(impulse);
    REQUIRE(y.rows == 2);
    REQUIRE(y.cols == 2);
    for (double v : y.v) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("clean intensity equals |forward + reference_field|^2") {
    Layout layout = random_layout(6, 21);
    ImageGrid y = clean_intensity(layout);
    holo::ForwardOperator op(layout);
    holo::ComplexField u = op.forward(layout.specimen);
    for (size_t i = 0; i < u.size(); ++i) {
        const double want = std::norm(u.v[i] + op.reference_field().v[i]);
        CHECK(y.v[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("beamstop geometry") {
    BeamstopMask none = BeamstopMask::from_block_size(8, 10, 0);
    CHECK(none.masked_count() == 0);
    CHECK_FALSE(none.any_masked());

    // omega = 1 masks only the DC pixel
    BeamstopMask dc = BeamstopMask::centered(8, 10, 1, 1);
    CHECK(dc.masked_count() == 1);
    CHECK_FALSE(dc.measured(0, 0));

    // 25 x 25 block on a full-scale grid
    BeamstopMask stop25 = BeamstopMask::from_block_size(128, 384, 25);
    CHECK(stop25.omega1 == 13);
    CHECK(stop25.masked_count() == 625);

    CHECK_THROWS_AS(BeamstopMask::from_block_size(128, 384, 24), holo::ConfigError);
}

TEST_CASE("apply_beamstop zeroes exactly the masked pixels") {
    ImageGrid y = oracle::random_image(16, 20, 5, 0.5, 2.0);
    BeamstopMask mask = BeamstopMask::from_block_size(16, 20, 5);
    ImageGrid masked = apply_beamstop(y, mask);
    size_t zeroed = 0;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 20; ++c) {
            if (mask.measured(r, c)) {
                CHECK(masked.at(r, c) == y.at(r, c));
            } else {
                CHECK(masked.at(r, c) == 0.0);
                ++zeroed;
            }
        }
    CHECK(zeroed == 25);
    CHECK_THROWS_AS(apply_beamstop(ImageGrid(4, 4), mask), holo::GeometryError);
}

TEST_CASE("Pois(0) draws are zero and inputs are validated") {
    ImageGrid y(8, 8);
    BeamstopMask mask = BeamstopMask::all_pass(8, 8);
    Measurement m = poisson_corrupt(y, mask, 1.0, 5.0, 42, LayoutMeta{});
    for (double v : m.noisy.v) CHECK(v == 0.0);

    ImageGrid bad(2, 2);
    bad.at(0, 0) = -1.0;
    CHECK_THROWS_AS(poisson_corrupt(bad, BeamstopMask::all_pass(2, 2), 1.0, 5.0, 1, LayoutMeta{}),
                    holo::DataError);
}

TEST_CASE("Poisson moments match the shot-noise model at Np = 0.1 and 10") {
    // constant clean intensity Y = ybar = 1, so lambda = Np; 1e5 iid pixels
    const int rows = 250, cols = 400;
    ImageGrid y(rows, cols);
    for (double& v : y.v) v = 1.0;
    BeamstopMask mask = BeamstopMask::all_pass(rows, cols);
    const double n_draws = static_cast<double>(rows) * cols;

    for (double np : {0.1, 10.0}) {
        Measurement m = poisson_corrupt(y, mask, 1.0, np, 2026, LayoutMeta{});
        double mean = 0.0;
        for (double v : m.noisy.v) mean += v;
        mean /= n_draws;
        double var = 0.0;
        for (double v : m.noisy.v) var += (v - mean) * (v - mean);
        var /= (n_draws - 1.0);

        const PoisMoments want = expected_moments(np, 1.0 / np, n_draws);
        INFO("np=", np, " mean=", mean, " var=", var);
        CHECK(std::abs(mean - want.mean) <= 4.0 * want.se_mean);
        CHECK(std::abs(var - want.var) <= 4.0 * want.se_var);
    }
}

TEST_CASE("noise variance scales like 1/Np") {
    const int rows = 200, cols = 200;
    ImageGrid y(rows, cols);
    for (double& v : y.v) v = 1.0;
    BeamstopMask mask = BeamstopMask::all_pass(rows, cols);
    double vars[2];
    const double nps[2] = {2.0, 20.0};
    for (int k = 0; k < 2; ++k) {
        Measurement m = poisson_corrupt(y, mask, 1.0, nps[k], 7, LayoutMeta{});
        double mean = 0.0;
        for (double v : m.noisy.v) mean += v;
        mean /= m.noisy.size();
        double var = 0.0;
        for (double v : m.noisy.v) var += (v - mean) * (v - mean);
        vars[k] = var / (m.noisy.size() - 1.0);
    }
    CHECK(vars[0] / vars[1] == doctest::Approx(10.0).epsilon(0.10));
}

TEST_CASE("quantization: counts are integers, masked pixels zero") {
    Layout layout = random_layout(8, 31);
    Measurement m = simulate_measurement(layout, LayoutMeta{}, 3, 2.5, 99);
    const double to_counts = m.np / m.ybar;
    for (size_t i = 0; i < m.noisy.size(); ++i) {
        if (!m.mask.m[i]) {
            CHECK(m.noisy.v[i] == 0.0);
        } else {
            const double z = m.noisy.v[i] * to_counts;
            CHECK(std::abs(z - std::round(z)) < 1e-9);
        }
    }
}

TEST_CASE("identical seed gives bit-identical measurements, different seed differs") {
    Layout layout = random_layout(8, 77);
    Measurement a = simulate_measurement(layout, LayoutMeta{}, 0, 1.0, 5);
    Measurement b = simulate_measurement(layout, LayoutMeta{}, 0, 1.0, 5);
    Measurement c = simulate_measurement(layout, LayoutMeta{}, 0, 1.0, 6);
    REQUIRE(a.noisy.size() == b.noisy.size());
    bool any_diff = false;
    for (size_t i = 0; i < a.noisy.size(); ++i) {
        CHECK(a.noisy.v[i] == b.noisy.v[i]);
        any_diff |= (a.noisy.v[i] != c.noisy.v[i]);
    }
    CHECK(any_diff);
}

TEST_CASE("parallel corruption matches the serial reference bit for bit") {
    ImageGrid y = oracle::random_image(64, 96, 3, 0.0, 4.0);
    BeamstopMask mask = BeamstopMask::from_block_size(64, 96, 7);
    ImageGrid y_masked = apply_beamstop(y, mask);
    Measurement par = poisson_corrupt(y_masked, mask, 1.0, 8.0, 123, LayoutMeta{});
    ImageGrid ser(64, 96);
    holo::serial::poisson_fill(y_masked, mask, 8.0, 1.0 / 8.0, 123, ser);
    for (size_t i = 0; i < ser.size(); ++i) CHECK(par.noisy.v[i] == ser.v[i]);
}

TEST_CASE("measurement file round trip") {
    Layout layout = random_layout(8, 15);
    LayoutMeta meta{8, 8, 2.0, 2.0, holo::ReferenceKind::Ura, 0};
    Measurement m = simulate_measurement(layout, meta, 5, 0.5, 31);

    const std::string path = (std::filesystem::temp_directory_path() / "holo_meas_test.holo").string();
    holo::save_measurement(path, m);
    Measurement r = holo::load_measurement(path);
    std::remove(path.c_str());

    CHECK(r.meta.n == meta.n);
    CHECK(r.meta.gap == meta.gap);
    CHECK(r.meta.os_x == meta.os_x);
    CHECK(r.meta.ref_kind == meta.ref_kind);
    CHECK(r.np == m.np);
    CHECK(r.ybar == m.ybar);
    CHECK(r.seed == m.seed);
    CHECK(r.mask.omega1 == m.mask.omega1);
    REQUIRE(r.noisy.size() == m.noisy.size());
    for (size_t i = 0; i < r.noisy.size(); ++i) CHECK(r.noisy.v[i] == m.noisy.v[i]);
}
