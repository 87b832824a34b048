#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "autofb/biometry.hpp"
#include "autofb/io/png_io.hpp"
#include "autofb/io/report_json.hpp"
#include "autofb/io/templates.hpp"
#include "autofb/ruler.hpp"

namespace autofb::io {

enum class ScaleMode { Ruler, Fixed };

struct RunConfig {
    std::filesystem::path masks_dir;
    std::filesystem::path images_dir;  // required in ruler mode
    ScaleMode scale_mode = ScaleMode::Fixed;
    double fixed_px_per_mm = 0.0;
    std::optional<std::filesystem::path> template_dir;
    RulerOptions ruler;
    MeasureOptions measure;
    int jobs = 1;
};

// Sorted (id, path) pairs for every *.png under dir; the id is the stem.
inline std::vector<std::pair<std::string, std::filesystem::path>> list_pngs(
    const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::filesystem::path>> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
        out.emplace_back(entry.path().stem().string(), entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct BatchSummary {
    std::size_t ok = 0;
    std::size_t failed = 0;
};

// Measures every mask in the configured directory. Per-image failures
// are recorded in the document and never abort the batch; entries come
// out keyed (and therefore ordered) by image id regardless of worker
// scheduling.
inline ReportDocument run_measure_batch(const RunConfig& config,
                                        BatchSummary* summary = nullptr) {
    if (config.scale_mode == ScaleMode::Fixed && !(config.fixed_px_per_mm > 0))
        throw std::invalid_argument("run_measure_batch: fixed scale must be positive");
    const auto masks = list_pngs(config.masks_dir);
    if (masks.empty())
        throw NoInputs("no *.png masks under " + config.masks_dir.string());

    const TemplatePair templates = resolve_templates(config.template_dir);

    std::vector<BatchEntry> results(masks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= masks.size()) return;
            BatchEntry& entry = results[i];
            try {
                const LabelMask mask = load_mask(masks[i].second);
                ScaleEstimate scale;
                if (config.scale_mode == ScaleMode::Fixed) {
                    scale = fixed_scale(config.fixed_px_per_mm);
                } else {
                    const auto image_path = config.images_dir / (masks[i].first + ".png");
                    const GrayImage frame = load_gray(image_path);
                    scale = infer_scale(
                        detect_ruler(frame, templates.major, templates.minor, config.ruler));
                }
                entry.report = measure(mask, scale, config.measure);
            } catch (const Error& e) {
                entry.report.reset();
                entry.error_code = e.code();
                entry.error_message = e.what();
            }
        }
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ReportDocument doc;
    BatchSummary counts;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        (results[i].report ? counts.ok : counts.failed)++;
        doc.entries[masks[i].first] = std::move(results[i]);
    }
    if (summary) *summary = counts;
    return doc;
}

}  // namespace autofb::io
