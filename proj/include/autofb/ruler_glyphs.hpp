#pragma once

#include "autofb/template_match.hpp"

namespace autofb {

// Canonical tick glyphs for the default ruler style. The phantom
// renderer draws these exact shapes, so the built-in templates are
// phantom-consistent by construction. Vendor-specific glyphs can be
// supplied as external assets instead (see io/templates.hpp).
//
// Both bars are 3 rows tall so sub-pixel blur affects them equally;
// the size classes differ in width only.

inline constexpr int kGlyphPatchW = 15;
inline constexpr int kGlyphPatchH = 7;

inline constexpr int kMajorBarX0 = 2, kMajorBarX1 = 13;  // [x0, x1), 11 wide
inline constexpr int kMinorBarX0 = 5, kMinorBarX1 = 10;  // [x0, x1), 5 wide
inline constexpr double kGlyphBarHalfHeight = 1.5;

// Glyph bars are centered on the patch's center pixel (7, 3).
inline constexpr double kGlyphAnchorX = 7.0;
inline constexpr double kGlyphAnchorY = 3.0;

inline MarkerTemplate make_default_template(bool major) {
    GrayImage patch(kGlyphPatchW, kGlyphPatchH, 0);
    const int x0 = major ? kMajorBarX0 : kMinorBarX0;
    const int x1 = major ? kMajorBarX1 : kMinorBarX1;
    for (int y = 2; y < 5; ++y)
        for (int x = x0; x < x1; ++x) patch.set(x, y, 255);
    return MarkerTemplate{std::move(patch), kGlyphAnchorX, kGlyphAnchorY};
}

inline MarkerTemplate default_major_template() { return make_default_template(true); }
inline MarkerTemplate default_minor_template() { return make_default_template(false); }

}  // namespace autofb
