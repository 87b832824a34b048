#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "autofb/errors.hpp"
#include "autofb/template_match.hpp"

namespace autofb {

enum class MarkerSize { Major, Minor };

// Detected on-screen ruler: marker centroids sorted top to bottom, the
// median tick gap, and the physical interval the gap corresponds to.
struct RulerDetection {
    std::vector<PointD> markers;
    std::vector<MarkerSize> sizes;  // parallel to markers
    double spacing_px = 0.0;
    int interval_mm = 0;  // 5 or 10
};

enum class ScaleSource { Ruler, FixedOverride };

struct ScaleEstimate {
    double px_per_mm = 0.0;
    ScaleSource source = ScaleSource::FixedOverride;
    std::optional<RulerDetection> detection;
};

inline ScaleEstimate fixed_scale(double px_per_mm) {
    return {px_per_mm, ScaleSource::FixedOverride, std::nullopt};
}

struct RulerOptions {
    double band_fraction = 0.12;  // leftmost share of columns to search
    double ncc_threshold = 0.7;
    double gap_cv_limit = 0.1;            // max coefficient of variation of gaps
    std::optional<int> interval_override;  // force 5 or 10 mm
};

// Finds ruler markers in the left-hand band by matching the major and
// minor tick templates. The smallest physical interval is 5 mm when both
// size classes appear along the ruler and 10 mm when all markers are one
// size.
inline RulerDetection detect_ruler(const GrayImage& image, const MarkerTemplate& major,
                                   const MarkerTemplate& minor,
                                   const RulerOptions& opts = {}) {
    const int band_w = static_cast<int>(std::ceil(opts.band_fraction * image.width()));
    if (band_w < std::max(major.patch.width(), minor.patch.width()))
        throw RulerNotFound("detect_ruler: search band narrower than the templates");

    const ColumnRange band{0, band_w};
    const MatchOptions mopts{opts.ncc_threshold};
    struct Tagged {
        MatchPeak peak;
        MarkerSize size;
    };
    std::vector<Tagged> all;
    for (const MatchPeak& p : match_template(image, major, band, mopts))
        all.push_back({p, MarkerSize::Major});
    for (const MatchPeak& p : match_template(image, minor, band, mopts))
        all.push_back({p, MarkerSize::Minor});
    std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
        if (a.peak.y != b.peak.y) return a.peak.y < b.peak.y;
        return a.peak.score > b.peak.score;
    });

    // The same tick usually fires under both templates; cluster nearby
    // matches vertically and keep the better-scoring size class.
    const double cluster_gap = std::min(major.patch.height(), minor.patch.height()) * 0.75;
    RulerDetection det;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i + 1;
        Tagged best = all[i];
        while (j < all.size() && all[j].peak.y - all[j - 1].peak.y <= cluster_gap) {
            if (all[j].peak.score > best.peak.score) best = all[j];
            ++j;
        }
        det.markers.push_back({best.peak.x, best.peak.y});
        det.sizes.push_back(best.size);
        i = j;
    }

    if (det.markers.size() < 3)
        throw RulerNotFound("detect_ruler: found " + std::to_string(det.markers.size()) +
                            " marker(s), need at least 3");

    std::vector<double> gaps;
    for (std::size_t k = 1; k < det.markers.size(); ++k)
        gaps.push_back(det.markers[k].y - det.markers[k - 1].y);
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    det.spacing_px = (m % 2 == 1) ? sorted[m / 2]
                                  : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / gaps.size();
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    var /= gaps.size();
    const double cv = std::sqrt(var) / mean;
    if (cv > opts.gap_cv_limit)
        throw InconsistentSpacing("detect_ruler: gap coefficient of variation " +
                                  std::to_string(cv) + " exceeds " +
                                  std::to_string(opts.gap_cv_limit));

    if (opts.interval_override) {
        det.interval_mm = *opts.interval_override;
    } else {
        const bool any_minor =
            std::any_of(det.sizes.begin(), det.sizes.end(),
                        [](MarkerSize s) { return s == MarkerSize::Minor; });
        const bool any_major =
            std::any_of(det.sizes.begin(), det.sizes.end(),
                        [](MarkerSize s) { return s == MarkerSize::Major; });
        det.interval_mm = (any_minor && any_major) ? 5 : 10;
    }
    return det;
}

inline ScaleEstimate infer_scale(const RulerDetection& detection) {
    return {detection.spacing_px / detection.interval_mm, ScaleSource::Ruler, detection};
}

}  // namespace autofb
