#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "autofb/errors.hpp"
#include "autofb/mask.hpp"

namespace autofb {

// Per-class pixel totals, e.g. accumulated over a training set.
struct ClassPixelCounts {
    std::array<std::uint64_t, kNumClasses> counts{};
};

// Weighted cross-entropy class weights w_i = max_j(c_j) / c_i. The most
// frequent class gets weight 1 by construction.
struct ClassWeights {
    std::array<double, kNumClasses> weights{};
};

inline ClassWeights class_weights(const ClassPixelCounts& counts) {
    std::uint64_t max_count = 0;
    for (std::uint64_t c : counts.counts) max_count = std::max(max_count, c);
    ClassWeights out;
    for (int i = 0; i < kNumClasses; ++i) {
        if (counts.counts[i] == 0)
            throw DegenerateClass("class_weights: zero pixel count for class " +
                                  std::string(to_string(static_cast<AnatomyClass>(i))));
        out.weights[i] =
            static_cast<double>(max_count) / static_cast<double>(counts.counts[i]);
    }
    return out;
}

// 4x4 pixel confusion accumulator; rows are ground truth, columns are
// prediction. Merging partial confusions is plain addition.
struct Confusion {
    std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts{};

    void accumulate(const LabelMask& pred, const LabelMask& gt) {
        if (pred.width() != gt.width() || pred.height() != gt.height())
            throw ShapeMismatch("confusion: prediction and ground truth differ in size");
        const auto& p = pred.data();
        const auto& g = gt.data();
        for (std::size_t i = 0; i < p.size(); ++i) ++counts[g[i]][p[i]];
    }

    Confusion& operator+=(const Confusion& other) {
        for (int i = 0; i < kNumClasses; ++i)
            for (int j = 0; j < kNumClasses; ++j) counts[i][j] += other.counts[i][j];
        return *this;
    }

    std::uint64_t gt_total(int cls) const {
        std::uint64_t t = 0;
        for (int j = 0; j < kNumClasses; ++j) t += counts[cls][j];
        return t;
    }

    std::uint64_t pred_total(int cls) const {
        std::uint64_t t = 0;
        for (int i = 0; i < kNumClasses; ++i) t += counts[i][cls];
        return t;
    }

    // IoU from aggregated counts; both-empty classes score 1.
    double iou(int cls) const {
        const std::uint64_t inter = counts[cls][cls];
        const std::uint64_t uni = gt_total(cls) + pred_total(cls) - inter;
        if (uni == 0) return 1.0;
        return static_cast<double>(inter) / static_cast<double>(uni);
    }
};

struct SegMetrics {
    std::array<double, kNumClasses> per_class_iou{};
    double miou = 0.0;
    Confusion confusion;
};

// Intersection over union of one class between two masks. Defined as 1
// when the class is absent from both.
inline double iou(const LabelMask& pred, const LabelMask& gt, AnatomyClass cls) {
    if (pred.width() != gt.width() || pred.height() != gt.height())
        throw ShapeMismatch("iou: prediction and ground truth differ in size");
    const auto c = static_cast<std::uint8_t>(cls);
    std::uint64_t inter = 0, uni = 0;
    const auto& p = pred.data();
    const auto& g = gt.data();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool in_p = p[i] == c, in_g = g[i] == c;
        inter += in_p && in_g;
        uni += in_p || in_g;
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

enum class MiouMode {
    Aggregate,  // dataset-level confusion, then per-class IoU
    PerImage,   // per-image per-class IoU averaged over images
};

inline SegMetrics aggregate_miou(std::span<const std::pair<LabelMask, LabelMask>> pairs,
                                 MiouMode mode = MiouMode::Aggregate) {
    if (pairs.empty()) throw EmptyInput("aggregate_miou: no mask pairs");

    SegMetrics out;
    for (const auto& [pred, gt] : pairs) out.confusion.accumulate(pred, gt);

    if (mode == MiouMode::Aggregate) {
        for (int c = 0; c < kNumClasses; ++c) out.per_class_iou[c] = out.confusion.iou(c);
    } else {
        for (int c = 0; c < kNumClasses; ++c) {
            double sum = 0.0;
            for (const auto& [pred, gt] : pairs)
                sum += iou(pred, gt, static_cast<AnatomyClass>(c));
            out.per_class_iou[c] = sum / static_cast<double>(pairs.size());
        }
    }
    double total = 0.0;
    for (int c = 0; c < kNumClasses; ++c) total += out.per_class_iou[c];
    out.miou = total / kNumClasses;
    return out;
}

inline SegMetrics aggregate_miou(const std::vector<std::pair<LabelMask, LabelMask>>& pairs,
                                 MiouMode mode = MiouMode::Aggregate) {
    return aggregate_miou(std::span<const std::pair<LabelMask, LabelMask>>(pairs), mode);
}

}  // namespace autofb
