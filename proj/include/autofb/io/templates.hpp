#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "autofb/io/png_io.hpp"
#include "autofb/io/report_json.hpp"
#include "autofb/ruler_glyphs.hpp"
#include "autofb/template_match.hpp"

namespace autofb::io {

inline constexpr const char* kTemplateDirEnvVar = "AUTOFB_TEMPLATES";

// Template assets are a PNG patch plus a JSON sidecar naming the anchor
// offset and size class, e.g. major.png + major.json.
inline MarkerTemplate load_template(const std::filesystem::path& dir,
                                    const std::string& stem) {
    GrayImage patch = load_gray(dir / (stem + ".png"));
    const json meta = read_json(dir / (stem + ".json"));
    MarkerTemplate tmpl;
    tmpl.patch = std::move(patch);
    tmpl.anchor_x = meta.at("anchor").at(0).get<double>();
    tmpl.anchor_y = meta.at("anchor").at(1).get<double>();
    if (tmpl.anchor_x < 0 || tmpl.anchor_x >= tmpl.patch.width() || tmpl.anchor_y < 0 ||
        tmpl.anchor_y >= tmpl.patch.height())
        throw UnreadableFile(stem + ".json: anchor outside the patch");
    return tmpl;
}

inline void save_template(const std::filesystem::path& dir, const std::string& stem,
                          const MarkerTemplate& tmpl, const std::string& size_class) {
    save_gray(dir / (stem + ".png"), tmpl.patch);
    write_json(dir / (stem + ".json"),
               json{{"anchor", {tmpl.anchor_x, tmpl.anchor_y}}, {"size", size_class}});
}

struct TemplatePair {
    MarkerTemplate major;
    MarkerTemplate minor;
};

// Resolution order: explicit directory, then $AUTOFB_TEMPLATES, then the
// built-in phantom-consistent glyphs.
inline TemplatePair resolve_templates(const std::optional<std::filesystem::path>& dir) {
    std::optional<std::filesystem::path> chosen = dir;
    if (!chosen) {
        if (const char* env = std::getenv(kTemplateDirEnvVar); env && *env)
            chosen = std::filesystem::path(env);
    }
    if (chosen) return {load_template(*chosen, "major"), load_template(*chosen, "minor")};
    return {default_major_template(), default_minor_template()};
}

}  // namespace autofb::io
