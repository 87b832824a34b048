#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace autofb {

// 8-bit grayscale raster, row-major. Carrier for on-screen ultrasound
// frames (ruler strip, overlays).
class GrayImage {
public:
    GrayImage() = default;

    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width),
          height_(height),
          pixels_(static_cast<std::size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
    }

    GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
        if (pixels_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("GrayImage: pixel buffer size mismatch");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool contains(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
    void set(int x, int y, std::uint8_t v) { pixels_[index(x, y)] = v; }

    const std::vector<std::uint8_t>& data() const { return pixels_; }
    std::vector<std::uint8_t>& data() { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

}  // namespace autofb
