#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "autofb/point.hpp"

namespace autofb {

// Anatomy labels as stored in segmentation masks.
enum class AnatomyClass : std::uint8_t {
    Background = 0,
    Head = 1,
    Abdomen = 2,
    Femur = 3,
};

inline constexpr int kNumClasses = 4;

inline const char* to_string(AnatomyClass c) {
    switch (c) {
        case AnatomyClass::Background: return "background";
        case AnatomyClass::Head: return "head";
        case AnatomyClass::Abdomen: return "abdomen";
        case AnatomyClass::Femur: return "femur";
    }
    return "unknown";
}

// Dense multi-class label image, row-major, one byte per pixel.
// Valid pixel values are 0..3 (see AnatomyClass).
class LabelMask {
public:
    LabelMask() = default;

    LabelMask(int width, int height, AnatomyClass fill = AnatomyClass::Background)
        : width_(width),
          height_(height),
          labels_(static_cast<std::size_t>(width) * height, static_cast<std::uint8_t>(fill)) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("LabelMask: dimensions must be positive");
    }

    LabelMask(int width, int height, std::vector<std::uint8_t> labels)
        : width_(width), height_(height), labels_(std::move(labels)) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("LabelMask: dimensions must be positive");
        if (labels_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("LabelMask: label buffer size mismatch");
        for (std::uint8_t v : labels_)
            if (v >= kNumClasses)
                throw std::invalid_argument("LabelMask: label value out of range: " +
                                            std::to_string(int(v)));
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    AnatomyClass at(int x, int y) const {
        return static_cast<AnatomyClass>(labels_[index(x, y)]);
    }

    void set(int x, int y, AnatomyClass c) {
        labels_[index(x, y)] = static_cast<std::uint8_t>(c);
    }

    AnatomyClass at(const PointI& p) const { return at(p.x, p.y); }
    void set(const PointI& p, AnatomyClass c) { set(p.x, p.y, c); }

    const std::vector<std::uint8_t>& data() const { return labels_; }

    friend bool operator==(const LabelMask&, const LabelMask&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> labels_;
};

}  // namespace autofb
