#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "autofb/bbox.hpp"

using namespace autofb;

TEST_CASE("fit_bbox: extremes over a block") {
    PixelRegion r;
    r.cls = AnatomyClass::Femur;
    for (int y = 0; y <= 40; ++y)
        for (int x = 0; x <= 30; ++x) r.pixels.push_back({x, y});
    auto box = fit_bbox(r);
    CHECK(box.min_x == 0);
    CHECK(box.min_y == 0);
    CHECK(box.max_x == 30);
    CHECK(box.max_y == 40);
}

TEST_CASE("fit_bbox: single pixel") {
    PixelRegion r{AnatomyClass::Femur, {{7, 3}}};
    auto box = fit_bbox(r);
    CHECK(box.min_x == 7);
    CHECK(box.max_x == 7);
    CHECK(box.min_y == 3);
    CHECK(box.max_y == 3);
    CHECK(bbox_diagonal(box) == 0.0);
}

TEST_CASE("fit_bbox: diagonal line of pixels") {
    // Bresenham-style line from (0,0) to (30,40).
    PixelRegion r;
    r.cls = AnatomyClass::Femur;
    for (int i = 0; i <= 40; ++i)
        r.pixels.push_back({static_cast<int>(std::lround(i * 30.0 / 40.0)), i});
    auto box = fit_bbox(r);
    CHECK(box.min_x == 0);
    CHECK(box.min_y == 0);
    CHECK(box.max_x == 30);
    CHECK(box.max_y == 40);
    CHECK_THAT(bbox_diagonal(box), Catch::Matchers::WithinAbs(50.0, 1e-12));
}

TEST_CASE("bbox_diagonal: 3-4-5 and axis-aligned cases") {
    CHECK_THAT(bbox_diagonal({0, 0, 30, 40}), Catch::Matchers::WithinAbs(50.0, 1e-12));
    CHECK_THAT(bbox_diagonal({10, 20, 10, 60}), Catch::Matchers::WithinAbs(40.0, 1e-12));
}

TEST_CASE("bbox_diagonal bounds the true diameter of the region") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> coord(0, 60);
    std::uniform_int_distribution<int> count(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        PixelRegion r;
        r.cls = AnatomyClass::Femur;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) r.pixels.push_back({coord(rng), coord(rng)});
        auto box = fit_bbox(r);
        double diameter = 0.0;
        for (const auto& p : r.pixels)
            for (const auto& q : r.pixels)
                diameter = std::max(diameter, std::hypot(double(p.x - q.x), double(p.y - q.y)));
        const double diag = bbox_diagonal(box);
        // |dx| <= width and |dy| <= height for every pair, so the
        // diagonal is an upper bound on any pairwise distance.
        CHECK(diameter <= diag + 1e-12);
        // The diagonal equals the max over corner-to-corner distances.
        const double corner = std::hypot(box.max_x - box.min_x, box.max_y - box.min_y);
        CHECK_THAT(diag, Catch::Matchers::WithinAbs(corner, 1e-12));
        // Equality when two opposite box corners are attained.
        const bool tl = std::any_of(r.pixels.begin(), r.pixels.end(), [&](const PointI& p) {
            return p.x == box.min_x && p.y == box.min_y;
        });
        const bool br = std::any_of(r.pixels.begin(), r.pixels.end(), [&](const PointI& p) {
            return p.x == box.max_x && p.y == box.max_y;
        });
        const bool tr = std::any_of(r.pixels.begin(), r.pixels.end(), [&](const PointI& p) {
            return p.x == box.max_x && p.y == box.min_y;
        });
        const bool bl = std::any_of(r.pixels.begin(), r.pixels.end(), [&](const PointI& p) {
            return p.x == box.min_x && p.y == box.max_y;
        });
        if ((tl && br) || (tr && bl))
            CHECK_THAT(diameter, Catch::Matchers::WithinAbs(diag, 1e-12));
    }
}
