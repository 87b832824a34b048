// autofb: fetal biometry from segmentation masks.
//
// Subcommands cover the post-segmentation half of the workflow: batch
// measurement with ruler or fixed scale, segmentation evaluation,
// error statistics against clinical values, training class weights,
// subject-disjoint folds, phantom generation and SVG overlays.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "autofb/autofb.hpp"
#include "autofb/io/batch.hpp"
#include "autofb/io/csv.hpp"
#include "autofb/io/png_io.hpp"
#include "autofb/io/report_json.hpp"
#include "autofb/io/svg_overlay.hpp"
#include "autofb/io/templates.hpp"

namespace fs = std::filesystem;
using namespace autofb;

namespace {

void emit(const io::json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-")
        std::cout << io::serialize(j);
    else
        io::write_json(out_path, j);
}

int cmd_measure(const std::string& masks, const std::string& images, bool scale_ruler,
                double px_per_mm, const std::string& templates, double ncc_threshold,
                double band_frac, int min_region_area, int jobs, const std::string& out) {
    io::RunConfig config;
    config.masks_dir = masks;
    config.images_dir = images;
    config.scale_mode = scale_ruler ? io::ScaleMode::Ruler : io::ScaleMode::Fixed;
    config.fixed_px_per_mm = px_per_mm;
    if (!templates.empty()) config.template_dir = fs::path(templates);
    config.ruler.ncc_threshold = ncc_threshold;
    config.ruler.band_fraction = band_frac;
    config.measure.min_region_area = min_region_area;
    config.jobs = jobs;

    io::BatchSummary summary;
    auto doc = io::run_measure_batch(config, &summary);
    emit(io::to_json(doc), out);
    std::fprintf(stderr, "measured %zu image(s): %zu ok, %zu failed\n",
                 summary.ok + summary.failed, summary.ok, summary.failed);
    return 0;
}

int cmd_eval(const std::string& pred_dir, const std::string& gt_dir, bool per_image,
             const std::string& out) {
    const auto preds = io::list_pngs(pred_dir);
    if (preds.empty()) throw NoInputs("no *.png predictions under " + pred_dir);

    std::vector<std::pair<LabelMask, LabelMask>> pairs;
    for (const auto& [id, path] : preds) {
        const fs::path gt_path = fs::path(gt_dir) / (id + ".png");
        pairs.emplace_back(io::load_mask(path), io::load_mask(gt_path));
    }
    const auto mode = per_image ? MiouMode::PerImage : MiouMode::Aggregate;
    auto metrics = aggregate_miou(pairs, mode);
    emit(io::to_json(metrics, per_image ? "per-image" : "aggregate"), out);
    std::fprintf(stderr, "evaluated %zu pair(s), mIoU %.4f\n", pairs.size(), metrics.miou);
    return 0;
}

int cmd_errors(const std::string& report_path, const std::string& clinical_path,
               const std::string& out) {
    const io::json report = io::read_json(report_path);
    const auto& entries = report.at("entries");

    // clinical.csv: image_id,measurement,value_mm
    std::map<std::string, std::vector<ErrorPair>> by_measurement;
    std::size_t missing = 0;
    for (const auto& row : io::read_csv(clinical_path, 3, 2)) {
        const std::string& id = row[0];
        const std::string& name = row[1];
        const double clinical = io::parse_double(row[2], clinical_path);
        if (!entries.contains(id) || entries.at(id).at("status") != "ok" ||
            !entries.at(id).at("measurements").contains(name)) {
            ++missing;
            continue;
        }
        const double predicted =
            entries.at(id).at("measurements").at(name).at("mm").get<double>();
        by_measurement[name].push_back({predicted, clinical});
    }
    if (by_measurement.empty())
        throw EmptyInput("no clinical rows matched report entries");

    io::json stats = io::json::object();
    for (const auto& [name, pairs] : by_measurement)
        stats[name] = io::to_json(error_stats(pairs, name));
    emit(stats, out);
    if (missing > 0)
        std::fprintf(stderr, "skipped %zu clinical row(s) without a matching report value\n",
                     missing);
    return 0;
}

int cmd_weights(const std::string& counts_path, const std::string& out) {
    // counts.csv: class,pixels with class one of the anatomy names or 0..3.
    ClassPixelCounts counts;
    for (const auto& row : io::read_csv(counts_path, 2, 1)) {
        int cls = -1;
        for (int c = 0; c < kNumClasses; ++c)
            if (row[0] == to_string(static_cast<AnatomyClass>(c))) cls = c;
        if (cls < 0 && row[0].size() == 1 && row[0][0] >= '0' && row[0][0] <= '3')
            cls = row[0][0] - '0';
        if (cls < 0) throw UnreadableFile(counts_path + ": unknown class '" + row[0] + "'");
        counts.counts[cls] = static_cast<std::uint64_t>(io::parse_long(row[1], counts_path));
    }
    auto weights = class_weights(counts);
    io::json j = io::json::object();
    for (int c = 0; c < kNumClasses; ++c)
        j[to_string(static_cast<AnatomyClass>(c))] = io::sig6(weights.weights[c]);
    emit(j, out);
    return 0;
}

int cmd_folds(const std::string& manifest_path, int k, std::uint64_t seed,
              const std::string& out) {
    // subjects.csv: subject_id,image_count
    std::vector<SubjectEntry> manifest;
    for (const auto& row : io::read_csv(manifest_path, 2, 1))
        manifest.push_back({row[0], static_cast<int>(io::parse_long(row[1], manifest_path))});
    auto folds = assign_folds(manifest, k, seed);

    io::json mapping = io::json::object();
    for (const auto& [subject, fold] : folds.mapping) mapping[subject] = fold;
    emit(io::json{{"k", folds.k},
                  {"seed", seed},
                  {"mapping", std::move(mapping)},
                  {"fold_image_counts", folds.fold_image_counts},
                  {"fold_subject_counts", folds.fold_subject_counts}},
         out);
    return 0;
}

int cmd_phantom(const std::string& kind_name, int n, std::uint64_t seed, int perturb,
                const std::string& out_dir) {
    PlaneClass kind = PlaneClass::Head;
    if (kind_name == "abdomen") kind = PlaneClass::Abdomen;
    if (kind_name == "femur") kind = PlaneClass::Femur;

    const fs::path root(out_dir);
    fs::create_directories(root / "masks");
    fs::create_directories(root / "images");
    fs::create_directories(root / "truth");
    for (int i = 0; i < n; ++i) {
        auto spec = random_phantom(kind, seed + static_cast<std::uint64_t>(i));
        auto [mask, truth] = render_mask(spec);
        if (perturb > 0) mask = perturb_mask(mask, perturb, spec.seed ^ 0xabcd);
        char id[32];
        std::snprintf(id, sizeof id, "phantom_%04d", i);
        io::save_mask(root / "masks" / (std::string(id) + ".png"), mask);
        io::save_gray(root / "images" / (std::string(id) + ".png"), render_ruler(spec));
        io::write_json(root / "truth" / (std::string(id) + ".json"), io::to_json(truth));
    }
    std::fprintf(stderr, "wrote %d phantom triplet(s) under %s\n", n, out_dir.c_str());
    return 0;
}

int cmd_overlay(const std::string& report_path, const std::string& images_dir,
                const std::string& out_dir) {
    const io::json report = io::read_json(report_path);
    fs::create_directories(out_dir);
    std::size_t written = 0, skipped = 0;
    for (const auto& [id, entry] : report.at("entries").items()) {
        if (entry.at("status") != "ok") {
            ++skipped;
            continue;
        }
        const fs::path image_path = fs::path(images_dir) / (id + ".png");
        if (!fs::exists(image_path)) {
            ++skipped;
            continue;
        }
        const GrayImage image = io::load_gray(image_path);
        const BiometryReport r = io::report_from_json(entry);
        const std::string svg = io::render_overlay(image, r);
        std::ofstream svg_out(fs::path(out_dir) / (id + ".svg"), std::ios::binary);
        svg_out << svg;
        ++written;
    }
    std::fprintf(stderr, "wrote %zu overlay(s), skipped %zu\n", written, skipped);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AutoFB: fetal biometry estimation from label masks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "Measure every mask in a directory");
    std::string masks, images, templates, out;
    std::string scale_mode;
    double px_per_mm = 0.0, ncc_threshold = 0.7, band_frac = 0.12;
    int min_region_area = 100, jobs = 1;
    measure_cmd->add_option("--masks", masks, "Directory of label-mask PNGs")->required();
    measure_cmd->add_option("--images", images, "Directory of frame PNGs (for ruler scale)");
    measure_cmd->add_option("--scale", scale_mode, "Scale source: 'ruler'")
        ->check(CLI::IsMember({"ruler"}));
    measure_cmd->add_option("--px-per-mm", px_per_mm, "Fixed scale override");
    measure_cmd->add_option("--templates", templates,
                            "Ruler template asset directory (else $AUTOFB_TEMPLATES)");
    measure_cmd->add_option("--ncc-threshold", ncc_threshold, "Template acceptance threshold");
    measure_cmd->add_option("--band-frac", band_frac, "Left search band fraction");
    measure_cmd->add_option("--min-region-area", min_region_area, "TinyRegion flag threshold");
    measure_cmd->add_option("--jobs", jobs, "Worker threads");
    measure_cmd->add_option("--out", out, "Report JSON path (default stdout)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Segmentation metrics (mIoU)");
    std::string pred_dir, gt_dir, eval_out;
    bool per_image = false;
    eval_cmd->add_option("--pred", pred_dir, "Predicted mask directory")->required();
    eval_cmd->add_option("--gt", gt_dir, "Ground-truth mask directory")->required();
    eval_cmd->add_flag("--per-image", per_image, "Average per-image IoU instead of aggregate");
    eval_cmd->add_option("--out", eval_out, "Metrics JSON path (default stdout)");

    // errors
    auto* errors_cmd = app.add_subcommand("errors", "Boxplot stats vs clinical values");
    std::string report_path, clinical_path, errors_out;
    errors_cmd->add_option("--report", report_path, "Report JSON from measure")->required();
    errors_cmd->add_option("--clinical", clinical_path,
                           "CSV: image_id,measurement,value_mm")->required();
    errors_cmd->add_option("--out", errors_out, "Stats JSON path (default stdout)");

    // weights
    auto* weights_cmd = app.add_subcommand("weights", "Class weights for weighted CE");
    std::string counts_path, weights_out;
    weights_cmd->add_option("--counts", counts_path, "CSV: class,pixels")->required();
    weights_cmd->add_option("--out", weights_out, "Weights JSON path (default stdout)");

    // folds
    auto* folds_cmd = app.add_subcommand("folds", "Subject-disjoint fold assignment");
    std::string manifest_path, folds_out;
    int k = 4;
    std::uint64_t fold_seed = 0;
    folds_cmd->add_option("--manifest", manifest_path,
                          "CSV: subject_id,image_count")->required();
    folds_cmd->add_option("--k", k, "Fold count");
    folds_cmd->add_option("--seed", fold_seed, "Shuffle seed");
    folds_cmd->add_option("--out", folds_out, "Assignment JSON path (default stdout)");

    // phantom
    auto* phantom_cmd = app.add_subcommand("phantom", "Generate synthetic triplets");
    std::string kind = "head", phantom_out = "phantoms";
    int n = 1, perturb = 0;
    std::uint64_t phantom_seed = 0;
    phantom_cmd->add_option("--kind", kind, "head | abdomen | femur")
        ->check(CLI::IsMember({"head", "abdomen", "femur"}));
    phantom_cmd->add_option("--n", n, "Number of phantoms");
    phantom_cmd->add_option("--seed", phantom_seed, "Generator seed");
    phantom_cmd->add_option("--perturb", perturb, "Boundary perturbation radius (px)");
    phantom_cmd->add_option("--out", phantom_out, "Output directory")->required();

    // overlay
    auto* overlay_cmd = app.add_subcommand("overlay", "SVG overlays for a report");
    std::string overlay_report, overlay_images, overlay_out;
    overlay_cmd->add_option("--report", overlay_report, "Report JSON")->required();
    overlay_cmd->add_option("--images", overlay_images, "Frame PNG directory")->required();
    overlay_cmd->add_option("--out", overlay_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure_cmd->parsed()) {
            const bool ruler = scale_mode == "ruler";
            if (ruler == (px_per_mm > 0.0)) {
                std::fprintf(stderr,
                             "measure: pass exactly one of --scale ruler or --px-per-mm X\n");
                return 2;
            }
            if (ruler && images.empty()) {
                std::fprintf(stderr, "measure: --scale ruler requires --images DIR\n");
                return 2;
            }
            return cmd_measure(masks, images, ruler, px_per_mm, templates, ncc_threshold,
                               band_frac, min_region_area, jobs, out);
        }
        if (eval_cmd->parsed()) return cmd_eval(pred_dir, gt_dir, per_image, eval_out);
        if (errors_cmd->parsed()) return cmd_errors(report_path, clinical_path, errors_out);
        if (weights_cmd->parsed()) return cmd_weights(counts_path, weights_out);
        if (folds_cmd->parsed()) return cmd_folds(manifest_path, k, fold_seed, folds_out);
        if (phantom_cmd->parsed())
            return cmd_phantom(kind, n, phantom_seed, perturb, phantom_out);
        if (overlay_cmd->parsed())
            return cmd_overlay(overlay_report, overlay_images, overlay_out);
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
