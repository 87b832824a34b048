#pragma once

#include <cmath>
#include <compare>

namespace autofb {

struct PointI {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const PointI&, const PointI&) = default;
};

struct PointD {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const PointD&, const PointD&) = default;
};

inline PointD to_pointd(const PointI& p) {
    return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

inline double distance(const PointD& a, const PointD& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Scan order: top-to-bottom, then left-to-right. Used wherever a
// deterministic pixel ordering is required.
struct ScanOrder {
    bool operator()(const PointI& a, const PointI& b) const {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

}  // namespace autofb
