#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "autofb/gray_image.hpp"
#include "autofb/point.hpp"

namespace autofb {

// Small grayscale patch plus the offset of the marker center within it.
struct MarkerTemplate {
    GrayImage patch;
    double anchor_x = 0.0;
    double anchor_y = 0.0;
};

// A template-match peak. x/y locate the template anchor in image
// coordinates; y carries sub-pixel refinement.
struct MatchPeak {
    double x = 0.0;
    double y = 0.0;
    double score = 0.0;
};

// Inclusive-exclusive column range restricting the search.
struct ColumnRange {
    int begin = 0;
    int end = 0;
};

struct MatchOptions {
    double threshold = 0.7;  // minimum accepted NCC score
};

// Zero-mean normalized cross-correlation over a column band. Peaks are
// local maxima above the acceptance threshold, non-maximum-suppressed
// within one template extent, with parabolic sub-pixel refinement in y.
// Windows with (near) zero variance are skipped: NCC is undefined there.
inline std::vector<MatchPeak> match_template(const GrayImage& image,
                                             const MarkerTemplate& tmpl,
                                             ColumnRange band,
                                             const MatchOptions& opts = {}) {
    const int pw = tmpl.patch.width(), ph = tmpl.patch.height();
    band.begin = std::max(band.begin, 0);
    band.end = std::min(band.end, image.width());
    if (band.end - band.begin < pw || image.height() < ph)
        throw std::invalid_argument("match_template: template larger than search band");

    const int nx = band.end - band.begin - pw + 1;
    const int ny = image.height() - ph + 1;
    const double n = static_cast<double>(pw) * ph;

    double t_sum = 0.0, t_sq = 0.0;
    for (std::uint8_t v : tmpl.patch.data()) {
        t_sum += v;
        t_sq += double(v) * v;
    }
    const double t_mean = t_sum / n;
    const double t_var = t_sq - t_sum * t_sum / n;
    if (t_var <= 1e-9)
        throw std::invalid_argument("match_template: template has no variance");
    const double t_norm = std::sqrt(t_var);

    // Score map; kUnset marks skipped (flat) windows.
    constexpr double kUnset = -2.0;
    std::vector<double> score(static_cast<std::size_t>(nx) * ny, kUnset);
    for (int ty = 0; ty < ny; ++ty) {
        for (int tx = 0; tx < nx; ++tx) {
            const int ix = band.begin + tx;
            double w_sum = 0.0, w_sq = 0.0, cross = 0.0;
            for (int j = 0; j < ph; ++j)
                for (int i = 0; i < pw; ++i) {
                    const double w = image.at(ix + i, ty + j);
                    w_sum += w;
                    w_sq += w * w;
                    cross += w * tmpl.patch.at(i, j);
                }
            const double w_var = w_sq - w_sum * w_sum / n;
            if (w_var <= 1e-9) continue;
            score[static_cast<std::size_t>(ty) * nx + tx] =
                (cross - w_sum * t_sum / n) / (std::sqrt(w_var) * t_norm);
        }
    }
    auto at = [&](int tx, int ty) { return score[static_cast<std::size_t>(ty) * nx + tx]; };

    // Candidate peaks above threshold, best-first.
    struct Cand {
        int tx, ty;
        double s;
    };
    std::vector<Cand> cands;
    for (int ty = 0; ty < ny; ++ty)
        for (int tx = 0; tx < nx; ++tx) {
            const double s = at(tx, ty);
            if (s >= opts.threshold) cands.push_back({tx, ty, s});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.s != b.s) return a.s > b.s;
        if (a.ty != b.ty) return a.ty < b.ty;
        return a.tx < b.tx;
    });

    std::vector<MatchPeak> peaks;
    std::vector<Cand> kept;
    for (const Cand& c : cands) {
        bool suppressed = false;
        for (const Cand& k : kept)
            if (std::abs(c.ty - k.ty) < ph && std::abs(c.tx - k.tx) < pw) {
                suppressed = true;
                break;
            }
        if (suppressed) continue;
        kept.push_back(c);

        double dy = 0.0;
        if (c.ty > 0 && c.ty + 1 < ny) {
            const double s0 = at(c.tx, c.ty - 1), s1 = c.s, s2 = at(c.tx, c.ty + 1);
            if (s0 != kUnset && s2 != kUnset) {
                const double denom = s0 - 2.0 * s1 + s2;
                if (std::abs(denom) > 1e-12) dy = std::clamp(0.5 * (s0 - s2) / denom, -0.5, 0.5);
            }
        }
        peaks.push_back({c.tx + band.begin + tmpl.anchor_x, c.ty + dy + tmpl.anchor_y, c.s});
    }

    std::sort(peaks.begin(), peaks.end(), [](const MatchPeak& a, const MatchPeak& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    return peaks;
}

}  // namespace autofb
