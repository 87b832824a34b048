#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <vector>

#include "autofb/mask.hpp"
#include "autofb/point.hpp"

namespace autofb {

// One 8-connected component of a single anatomy class. Pixels are kept
// in scan order so downstream consumers are deterministic.
struct PixelRegion {
    AnatomyClass cls = AnatomyClass::Background;
    std::vector<PointI> pixels;

    std::size_t area() const { return pixels.size(); }
};

// Closed outer boundary of a region; consecutive points are 8-neighbors
// and the last point adjoins the first.
struct Contour {
    std::vector<PointI> points;
};

namespace detail {

// 8-neighborhood in counterclockwise order on screen (y grows downward):
// E, NE, N, NW, W, SW, S, SE
inline constexpr std::array<PointI, 8> kCcw = {{
    {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

}  // namespace detail

// Decomposes every non-background class of the mask into 8-connected
// components. Regions are returned sorted by area descending; ties break
// by class then by first pixel in scan order.
inline std::vector<PixelRegion> extract_regions(const LabelMask& mask) {
    const int w = mask.width(), h = mask.height();
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<PixelRegion> regions;
    std::vector<PointI> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (visited[idx]) continue;
            const AnatomyClass cls = mask.at(x, y);
            if (cls == AnatomyClass::Background) {
                visited[idx] = 1;
                continue;
            }
            PixelRegion region;
            region.cls = cls;
            stack.clear();
            stack.push_back({x, y});
            visited[idx] = 1;
            while (!stack.empty()) {
                const PointI p = stack.back();
                stack.pop_back();
                region.pixels.push_back(p);
                for (const PointI& d : detail::kCcw) {
                    const int nx = p.x + d.x, ny = p.y + d.y;
                    if (!mask.contains(nx, ny)) continue;
                    const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                    if (visited[nidx] || mask.at(nx, ny) != cls) continue;
                    visited[nidx] = 1;
                    stack.push_back({nx, ny});
                }
            }
            std::sort(region.pixels.begin(), region.pixels.end(), ScanOrder{});
            regions.push_back(std::move(region));
        }
    }

    std::sort(regions.begin(), regions.end(), [](const PixelRegion& a, const PixelRegion& b) {
        if (a.area() != b.area()) return a.area() > b.area();
        if (a.cls != b.cls) return a.cls < b.cls;
        return ScanOrder{}(a.pixels.front(), b.pixels.front());
    });
    return regions;
}

// Moore-neighbor boundary following in the Suzuki-Abe formulation: at
// each step the neighborhood of the current pixel is scanned counter-
// clockwise starting just past the pixel we came from. The walk stops
// when it is about to repeat its first transition. Thin structures may
// legitimately visit a pixel twice (once per side).
inline Contour trace_contour(const PixelRegion& region) {
    assert(!region.pixels.empty());
    if (region.pixels.size() == 1) return Contour{{region.pixels.front()}};

    // Local bitmap with a 1-pixel pad so neighbor lookups never branch.
    int min_x = region.pixels.front().x, max_x = min_x;
    int min_y = region.pixels.front().y, max_y = min_y;
    for (const PointI& p : region.pixels) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int bw = max_x - min_x + 3, bh = max_y - min_y + 3;
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(bw) * bh, 0);
    auto on = [&](const PointI& g) -> std::uint8_t& {
        return grid[static_cast<std::size_t>(g.y) * bw + g.x];
    };
    for (const PointI& p : region.pixels) on({p.x - min_x + 1, p.y - min_y + 1}) = 1;

    auto neighbor = [](const PointI& g, int dir) {
        return PointI{g.x + detail::kCcw[dir].x, g.y + detail::kCcw[dir].y};
    };

    // Pixels arrive scan-ordered, so front() is topmost-leftmost.
    // Clockwise scan from W finds the pixel the walk will end on.
    const PointI start{region.pixels.front().x - min_x + 1,
                       region.pixels.front().y - min_y + 1};
    int s = -1;
    for (int k = 0; k < 8; ++k) {
        const int dir = (4 - k) & 7;  // W NW N NE E SE S SW
        if (on(neighbor(start, dir))) {
            s = dir;
            break;
        }
    }
    if (s < 0) return Contour{{region.pixels.front()}};  // isolated pixel

    const PointI last = neighbor(start, s);
    PointI cur = start;
    int back = s;  // direction from cur to the previous pixel

    Contour contour;
    const std::size_t cap = 4 * region.pixels.size() + 8;
    for (std::size_t step = 0; step < cap; ++step) {
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int dir = (back + k) & 7;
            if (on(neighbor(cur, dir))) {
                found = dir;
                break;
            }
        }
        assert(found >= 0);
        if (found < 0) break;  // malformed region; keep release builds defined
        const PointI next = neighbor(cur, found);
        contour.points.push_back({cur.x + min_x - 1, cur.y + min_y - 1});
        if (next == start && cur == last) break;
        back = (found + 4) & 7;
        cur = next;
    }
    return contour;
}

}  // namespace autofb
