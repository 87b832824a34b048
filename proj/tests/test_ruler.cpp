#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "autofb/phantom.hpp"
#include "autofb/ruler.hpp"
#include "autofb/ruler_glyphs.hpp"

using namespace autofb;

namespace {

PhantomSpec ruler_spec(double px_per_mm, int interval_mm, std::uint64_t seed = 0) {
    PhantomSpec spec;
    spec.px_per_mm = px_per_mm;
    spec.interval_mm = interval_mm;
    spec.image_width = 256;
    spec.image_height =
        std::max(400, static_cast<int>(12 * px_per_mm * interval_mm) + 40);
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_CASE("detect_ruler: alternating ticks every 25 px mean a 5 mm interval") {
    auto img = render_ruler(ruler_spec(5.0, 5));
    auto det = detect_ruler(img, default_major_template(), default_minor_template());
    CHECK(det.interval_mm == 5);
    CHECK_THAT(det.spacing_px, Catch::Matchers::WithinAbs(25.0, 0.5));
    CHECK(det.markers.size() >= 3);
    bool saw_major = false, saw_minor = false;
    for (MarkerSize s : det.sizes) (s == MarkerSize::Major ? saw_major : saw_minor) = true;
    CHECK(saw_major);
    CHECK(saw_minor);
}

TEST_CASE("detect_ruler: uniform major ticks every 40 px mean a 10 mm interval") {
    auto img = render_ruler(ruler_spec(4.0, 10));
    auto det = detect_ruler(img, default_major_template(), default_minor_template());
    CHECK(det.interval_mm == 10);
    CHECK_THAT(det.spacing_px, Catch::Matchers::WithinAbs(40.0, 0.5));
    for (MarkerSize s : det.sizes) CHECK(s == MarkerSize::Major);
}

TEST_CASE("detect_ruler: markers come back sorted top to bottom") {
    auto img = render_ruler(ruler_spec(6.0, 5, 17));
    auto det = detect_ruler(img, default_major_template(), default_minor_template());
    for (std::size_t i = 1; i < det.markers.size(); ++i)
        CHECK(det.markers[i - 1].y < det.markers[i].y);
}

TEST_CASE("detect_ruler: blank image raises RulerNotFound") {
    GrayImage img(256, 400, 0);
    CHECK_THROWS_AS(
        detect_ruler(img, default_major_template(), default_minor_template()),
        RulerNotFound);
}

TEST_CASE("detect_ruler: irregular spacing raises InconsistentSpacing") {
    GrayImage img(256, 400, 0);
    auto tmpl = default_major_template();
    auto paste = [&](int y0) {
        for (int y = 0; y < tmpl.patch.height(); ++y)
            for (int x = 0; x < tmpl.patch.width(); ++x)
                img.set(x, y0 + y, tmpl.patch.at(x, y));
    };
    paste(20);
    paste(60);
    paste(160);  // wildly different gap
    CHECK_THROWS_AS(
        detect_ruler(img, default_major_template(), default_minor_template()),
        InconsistentSpacing);
}

TEST_CASE("infer_scale: px_per_mm is spacing over interval") {
    RulerDetection det;
    det.markers = {{7, 20}, {7, 45}, {7, 70}};
    det.sizes = {MarkerSize::Major, MarkerSize::Minor, MarkerSize::Major};
    det.spacing_px = 25.0;
    det.interval_mm = 5;
    auto scale = infer_scale(det);
    CHECK_THAT(scale.px_per_mm, Catch::Matchers::WithinAbs(5.0, 1e-12));
    CHECK(scale.source == ScaleSource::Ruler);
    REQUIRE(scale.detection.has_value());

    det.spacing_px = 40.0;
    det.interval_mm = 10;
    CHECK_THAT(infer_scale(det).px_per_mm, Catch::Matchers::WithinAbs(4.0, 1e-12));

    det.spacing_px = 31.5;
    det.interval_mm = 5;
    CHECK_THAT(infer_scale(det).px_per_mm, Catch::Matchers::WithinAbs(6.3, 1e-12));
}

TEST_CASE("scale recovery round trip stays within 1%") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> up(2.0, 12.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double p = up(rng);
        const int interval = (trial % 2 == 0) ? 5 : 10;
        auto spec = ruler_spec(p, interval, 1000 + trial);
        auto img = render_ruler(spec);
        auto det = detect_ruler(img, default_major_template(), default_minor_template());
        REQUIRE(det.interval_mm == interval);
        const double got = infer_scale(det).px_per_mm;
        CHECK_THAT(got, Catch::Matchers::WithinRel(p, 0.01));
    }
}
