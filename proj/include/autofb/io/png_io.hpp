#pragma once

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "autofb/errors.hpp"
#include "autofb/gray_image.hpp"
#include "autofb/mask.hpp"

namespace autofb::io {

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Decodes an 8-bit single-channel PNG. 1/2/4-bit grayscale expands
// losslessly; anything else (color, palette, 16-bit) is rejected.
inline GrayImage read_gray8_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw UnreadableFile("cannot open " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw UnreadableFile("libpng init failed for " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw UnreadableFile("libpng info init failed for " + path.string());
    }
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnreadableFile("not a decodable PNG: " + path.string());
    }
    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth > 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw UnreadableFile("expected 8-bit single-channel grayscale PNG: " + path.string());
    }
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    GrayImage out(static_cast<int>(width), static_cast<int>(height));
    row_ptrs.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        row_ptrs[y] = out.data().data() + static_cast<std::size_t>(y) * width;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

inline void write_gray8_png(const std::filesystem::path& path, const std::uint8_t* pixels,
                            int width, int height) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw UnreadableFile("cannot open for writing: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw UnreadableFile("libpng init failed for " + path.string());
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw UnreadableFile("libpng info init failed for " + path.string());
    }
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw UnreadableFile("PNG write failed: " + path.string());
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    row_ptrs.resize(height);
    for (int y = 0; y < height; ++y)
        row_ptrs[y] = const_cast<png_bytep>(pixels + static_cast<std::size_t>(y) * width);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace detail

inline GrayImage load_gray(const std::filesystem::path& path) {
    return detail::read_gray8_png(path);
}

inline void save_gray(const std::filesystem::path& path, const GrayImage& image) {
    detail::write_gray8_png(path, image.data().data(), image.width(), image.height());
}

// Label masks are stored as plain grayscale PNGs with raw values 0..3.
// Any other pixel value is reported with the first offending coordinate.
inline LabelMask load_mask(const std::filesystem::path& path) {
    GrayImage raw = detail::read_gray8_png(path);
    for (int y = 0; y < raw.height(); ++y)
        for (int x = 0; x < raw.width(); ++x)
            if (raw.at(x, y) >= kNumClasses)
                throw IllegalLabelValue("illegal label " + std::to_string(int(raw.at(x, y))) +
                                        " at (" + std::to_string(x) + ", " + std::to_string(y) +
                                        ") in " + path.string());
    return LabelMask(raw.width(), raw.height(), raw.data());
}

inline void save_mask(const std::filesystem::path& path, const LabelMask& mask) {
    detail::write_gray8_png(path, mask.data().data(), mask.width(), mask.height());
}

}  // namespace autofb::io
