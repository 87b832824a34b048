#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "autofb/ellipse_fit.hpp"
#include "autofb/errors.hpp"

using namespace autofb;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<PointD> sample_ellipse(const EllipseParams& e, int n, double phase = 0.0) {
    std::vector<PointD> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) pts.push_back(ellipse_point(e, phase + 2.0 * kPi * k / n));
    return pts;
}

double angle_diff_mod_pi(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

}  // namespace

TEST_CASE("fit_ellipse: circle through 8 points") {
    EllipseParams truth{0, 0, 10, 10, 0};
    auto e = fit_ellipse(sample_ellipse(truth, 8));
    CHECK_THAT(e.cx, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(e.cy, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_THAT(e.a, Catch::Matchers::WithinAbs(10.0, 1e-9));
    CHECK_THAT(e.b, Catch::Matchers::WithinAbs(10.0, 1e-9));
}

TEST_CASE("fit_ellipse: recovers generator parameters from 32 samples") {
    EllipseParams truth{100, 80, 50, 30, 30.0 * kPi / 180.0};
    auto e = fit_ellipse(sample_ellipse(truth, 32));
    CHECK_THAT(e.cx, Catch::Matchers::WithinAbs(truth.cx, 1e-6));
    CHECK_THAT(e.cy, Catch::Matchers::WithinAbs(truth.cy, 1e-6));
    CHECK_THAT(e.a, Catch::Matchers::WithinAbs(truth.a, 1e-6));
    CHECK_THAT(e.b, Catch::Matchers::WithinAbs(truth.b, 1e-6));
    CHECK(angle_diff_mod_pi(e.theta, truth.theta) < 1e-6);
}

TEST_CASE("fit_ellipse: fewer than 6 points is an error") {
    EllipseParams truth{0, 0, 10, 5, 0};
    auto pts = sample_ellipse(truth, 5);
    CHECK_THROWS_AS(fit_ellipse(pts), InsufficientPoints);
}

TEST_CASE("fit_ellipse: collinear points are degenerate") {
    std::vector<PointD> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({1.0 * i, 2.0 * i + 3.0});
    CHECK_THROWS_AS(fit_ellipse(pts), DegenerateConfiguration);
}

TEST_CASE("fit_ellipse: coincident points are degenerate") {
    std::vector<PointD> pts(10, PointD{4.0, 5.0});
    CHECK_THROWS_AS(fit_ellipse(pts), DegenerateConfiguration);
}

TEST_CASE("fit_ellipse: exactness over random ellipses") {
    std::mt19937 rng(990011);
    std::uniform_real_distribution<double> ua(20.0, 500.0);
    std::uniform_real_distribution<double> uratio(0.3, 1.0);
    std::uniform_real_distribution<double> utheta(0.0, kPi);
    std::uniform_real_distribution<double> uc(-200.0, 800.0);
    std::uniform_int_distribution<int> un(16, 64);

    for (int trial = 0; trial < 100; ++trial) {
        EllipseParams truth;
        truth.a = ua(rng);
        truth.b = truth.a * uratio(rng);
        truth.theta = utheta(rng);
        truth.cx = uc(rng);
        truth.cy = uc(rng);
        auto e = fit_ellipse(sample_ellipse(truth, un(rng), utheta(rng)));
        CHECK_THAT(e.cx, Catch::Matchers::WithinAbs(truth.cx, 1e-6));
        CHECK_THAT(e.cy, Catch::Matchers::WithinAbs(truth.cy, 1e-6));
        CHECK_THAT(e.a, Catch::Matchers::WithinAbs(truth.a, 1e-6));
        CHECK_THAT(e.b, Catch::Matchers::WithinAbs(truth.b, 1e-6));
        if (truth.a - truth.b > 1e-3 * truth.a)
            CHECK(angle_diff_mod_pi(e.theta, truth.theta) < 1e-6);
        CHECK(e.a >= e.b);
        CHECK(e.b > 0);
        CHECK(e.theta >= 0.0);
        CHECK(e.theta < kPi);
    }
}

TEST_CASE("fit_ellipse: translation and scale equivariance") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> shift(-500.0, 500.0);
    std::uniform_real_distribution<double> uscale(0.1, 20.0);

    EllipseParams truth{12, -7, 80, 35, 1.1};
    auto base = sample_ellipse(truth, 24);
    auto fitted = fit_ellipse(base);

    for (int trial = 0; trial < 20; ++trial) {
        const double tx = shift(rng), ty = shift(rng);
        std::vector<PointD> moved;
        for (const auto& p : base) moved.push_back({p.x + tx, p.y + ty});
        auto e = fit_ellipse(moved);
        CHECK_THAT(e.cx, Catch::Matchers::WithinAbs(fitted.cx + tx, 1e-9 * (1 + std::abs(fitted.cx + tx))));
        CHECK_THAT(e.cy, Catch::Matchers::WithinAbs(fitted.cy + ty, 1e-9 * (1 + std::abs(fitted.cy + ty))));
        CHECK_THAT(e.a, Catch::Matchers::WithinAbs(fitted.a, 1e-9 * fitted.a));
        CHECK_THAT(e.b, Catch::Matchers::WithinAbs(fitted.b, 1e-9 * fitted.b));
        CHECK(angle_diff_mod_pi(e.theta, fitted.theta) < 1e-9);

        const double s = uscale(rng);
        std::vector<PointD> scaled;
        for (const auto& p : base) scaled.push_back({p.x * s, p.y * s});
        auto es = fit_ellipse(scaled);
        CHECK_THAT(es.cx, Catch::Matchers::WithinRel(fitted.cx * s, 1e-9));
        CHECK_THAT(es.cy, Catch::Matchers::WithinRel(fitted.cy * s, 1e-9));
        CHECK_THAT(es.a, Catch::Matchers::WithinRel(fitted.a * s, 1e-9));
        CHECK_THAT(es.b, Catch::Matchers::WithinRel(fitted.b * s, 1e-9));
    }
}

TEST_CASE("fit_ellipse: rasterized contour recovery within a pixel") {
    // Rasterize ellipses as pixel-center masks, trace, fit; semi-axes
    // must come back within 1 px and center within 0.5 px.
    std::mt19937 rng(20210630);
    std::uniform_real_distribution<double> ua(100.0, 180.0);
    std::uniform_real_distribution<double> uratio(0.4, 0.95);
    std::uniform_real_distribution<double> utheta(0.0, kPi);

    for (int trial = 0; trial < 8; ++trial) {
        EllipseParams truth;
        truth.a = ua(rng);
        truth.b = truth.a * uratio(rng);
        truth.theta = utheta(rng);
        const int size = 2 * static_cast<int>(truth.a) + 21;
        truth.cx = size / 2.0;
        truth.cy = size / 2.0;

        LabelMask m(size, size);
        const double ct = std::cos(truth.theta), st = std::sin(truth.theta);
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) {
                const double dx = x - truth.cx, dy = y - truth.cy;
                const double u = (dx * ct + dy * st) / truth.a;
                const double v = (-dx * st + dy * ct) / truth.b;
                if (u * u + v * v <= 1.0) m.set(x, y, AnatomyClass::Head);
            }
        auto regions = extract_regions(m);
        REQUIRE(regions.size() == 1);
        auto e = fit_ellipse(trace_contour(regions[0]));
        CHECK_THAT(e.cx, Catch::Matchers::WithinAbs(truth.cx, 0.5));
        CHECK_THAT(e.cy, Catch::Matchers::WithinAbs(truth.cy, 0.5));
        CHECK_THAT(e.a, Catch::Matchers::WithinAbs(truth.a, 1.0));
        CHECK_THAT(e.b, Catch::Matchers::WithinAbs(truth.b, 1.0));
    }
}
