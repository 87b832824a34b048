#pragma once

#include <cassert>
#include <cmath>

#include "autofb/regions.hpp"

namespace autofb {

// Axis-aligned box over pixel-center coordinates; orientation is zero by
// construction.
struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

inline BoundingBox fit_bbox(const PixelRegion& region) {
    assert(!region.pixels.empty());
    int min_x = region.pixels.front().x, max_x = min_x;
    int min_y = region.pixels.front().y, max_y = min_y;
    for (const PointI& p : region.pixels) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    return {static_cast<double>(min_x), static_cast<double>(min_y),
            static_cast<double>(max_x), static_cast<double>(max_y)};
}

// Diagonal length between pixel centers (max - min convention). Zero for
// a single-pixel box; callers decide whether that is a quality problem.
inline double bbox_diagonal(const BoundingBox& box) {
    return std::hypot(box.max_x - box.min_x, box.max_y - box.min_y);
}

}  // namespace autofb
