#pragma once

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>

#include "autofb/biometry.hpp"
#include "autofb/error_stats.hpp"
#include "autofb/metrics.hpp"
#include "autofb/phantom.hpp"
#include "autofb/version.hpp"

namespace autofb::io {

using json = nlohmann::json;

// All floats entering documents are rounded to 6 significant digits so
// repeated runs serialize byte-identically.
inline double sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

inline json to_json(const Measurement& m) {
    return json{{"px", sig6(m.value_px)}, {"mm", sig6(m.value_mm)}};
}

inline json to_json(const ScaleEstimate& s) {
    json j{{"px_per_mm", sig6(s.px_per_mm)},
           {"source", s.source == ScaleSource::Ruler ? "ruler" : "fixed-override"}};
    if (s.detection) {
        json markers = json::array();
        for (std::size_t i = 0; i < s.detection->markers.size(); ++i) {
            markers.push_back(json{{"x", sig6(s.detection->markers[i].x)},
                                   {"y", sig6(s.detection->markers[i].y)},
                                   {"size", s.detection->sizes[i] == MarkerSize::Major
                                                ? "major"
                                                : "minor"}});
        }
        j["ruler"] = json{{"spacing_px", sig6(s.detection->spacing_px)},
                          {"interval_mm", s.detection->interval_mm},
                          {"markers", std::move(markers)}};
    }
    return j;
}

inline json to_json(const BiometryReport& r) {
    json measurements = json::object();
    for (const auto& [name, m] : r.measurements) measurements[name] = to_json(m);

    json fit;
    if (const auto* e = std::get_if<EllipseParams>(&r.fitted)) {
        fit = json{{"type", "ellipse"}, {"cx", sig6(e->cx)}, {"cy", sig6(e->cy)},
                   {"a", sig6(e->a)},   {"b", sig6(e->b)},   {"theta", sig6(e->theta)}};
    } else {
        const auto& b = std::get<BoundingBox>(r.fitted);
        fit = json{{"type", "bbox"},
                   {"min_x", sig6(b.min_x)},
                   {"min_y", sig6(b.min_y)},
                   {"max_x", sig6(b.max_x)},
                   {"max_y", sig6(b.max_y)}};
    }

    json flags = json::array();
    for (QualityFlag f : r.flags) flags.push_back(to_string(f));

    return json{{"status", "ok"},
                {"plane", to_string(r.plane)},
                {"scale", to_json(r.scale)},
                {"fit", std::move(fit)},
                {"measurements", std::move(measurements)},
                {"flags", std::move(flags)}};
}

inline json to_json(const SegMetrics& m, const std::string& mode) {
    json per_class = json::object();
    for (int c = 0; c < kNumClasses; ++c)
        per_class[to_string(static_cast<AnatomyClass>(c))] = sig6(m.per_class_iou[c]);
    json confusion = json::array();
    for (int i = 0; i < kNumClasses; ++i) {
        json row = json::array();
        for (int j = 0; j < kNumClasses; ++j) row.push_back(m.confusion.counts[i][j]);
        confusion.push_back(std::move(row));
    }
    return json{{"per_class_iou", std::move(per_class)},
                {"miou", sig6(m.miou)},
                {"confusion", std::move(confusion)},
                {"mode", mode}};
}

inline json to_json(const ErrorStats& s) {
    json outliers = json::array();
    for (double o : s.outliers) outliers.push_back(sig6(o));
    return json{{"n", s.n},
                {"median", sig6(s.median)},
                {"q1", sig6(s.q1)},
                {"q3", sig6(s.q3)},
                {"whisker_low", sig6(s.whisker_low)},
                {"whisker_high", sig6(s.whisker_high)},
                {"outliers", std::move(outliers)},
                {"within_tolerance_rate", sig6(s.within_tolerance_rate)}};
}

// One batch entry: either a successful report or a recorded error.
struct BatchEntry {
    std::optional<BiometryReport> report;
    std::string error_code;
    std::string error_message;
};

struct ReportDocument {
    std::map<std::string, BatchEntry> entries;  // keyed by image id
    std::optional<SegMetrics> metrics;
    std::string metrics_mode = "aggregate";
    std::map<std::string, ErrorStats> error_stats;
};

inline json to_json(const ReportDocument& doc) {
    json entries = json::object();
    for (const auto& [id, entry] : doc.entries) {
        if (entry.report) {
            entries[id] = to_json(*entry.report);
        } else {
            entries[id] = json{{"status", "error"},
                               {"error", entry.error_code},
                               {"message", entry.error_message}};
        }
    }
    json doc_json{{"tool", kToolName}, {"version", kToolVersion},
                  {"entries", std::move(entries)}};
    if (doc.metrics) doc_json["metrics"] = to_json(*doc.metrics, doc.metrics_mode);
    if (!doc.error_stats.empty()) {
        json stats = json::object();
        for (const auto& [name, s] : doc.error_stats) stats[name] = to_json(s);
        doc_json["error_stats"] = std::move(stats);
    }
    return doc_json;
}

inline std::string serialize(const json& j) { return j.dump(2) + "\n"; }

inline void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UnreadableFile("cannot open for writing: " + path.string());
    out << serialize(j);
}

inline json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UnreadableFile("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UnreadableFile(path.string() + ": " + e.what());
    }
    return j;
}

inline PlaneClass plane_from_string(const std::string& s) {
    if (s == "head") return PlaneClass::Head;
    if (s == "abdomen") return PlaneClass::Abdomen;
    if (s == "femur") return PlaneClass::Femur;
    throw UnreadableFile("unknown plane: " + s);
}

// Parses back the subset of a report entry needed by downstream
// commands (overlay rendering, error statistics).
inline BiometryReport report_from_json(const json& j) {
    BiometryReport r;
    r.plane = plane_from_string(j.at("plane").get<std::string>());
    const json& scale = j.at("scale");
    r.scale.px_per_mm = scale.at("px_per_mm").get<double>();
    r.scale.source = scale.at("source").get<std::string>() == "ruler"
                         ? ScaleSource::Ruler
                         : ScaleSource::FixedOverride;
    const json& fit = j.at("fit");
    if (fit.at("type").get<std::string>() == "ellipse") {
        r.fitted = EllipseParams{fit.at("cx").get<double>(), fit.at("cy").get<double>(),
                                 fit.at("a").get<double>(), fit.at("b").get<double>(),
                                 fit.at("theta").get<double>()};
    } else {
        r.fitted = BoundingBox{fit.at("min_x").get<double>(), fit.at("min_y").get<double>(),
                               fit.at("max_x").get<double>(), fit.at("max_y").get<double>()};
    }
    for (const auto& [name, m] : j.at("measurements").items())
        r.measurements[name] = {m.at("px").get<double>(), m.at("mm").get<double>()};
    return r;
}

// Phantom ground truth sidecar, consumed by tests and batch evaluation.
inline json to_json(const PhantomTruth& t) {
    json measurements = json::object();
    for (const auto& [name, m] : t.measurements) measurements[name] = to_json(m);
    json j{{"plane", to_string(t.plane)},
           {"px_per_mm", sig6(t.px_per_mm)},
           {"interval_mm", t.interval_mm},
           {"spacing_px", sig6(t.spacing_px)},
           {"measurements", std::move(measurements)}};
    if (t.ellipse)
        j["ellipse"] = json{{"cx", sig6(t.ellipse->cx)}, {"cy", sig6(t.ellipse->cy)},
                            {"a", sig6(t.ellipse->a)},   {"b", sig6(t.ellipse->b)},
                            {"theta", sig6(t.ellipse->theta)}};
    if (t.bbox)
        j["bbox"] = json{{"min_x", sig6(t.bbox->min_x)},
                         {"min_y", sig6(t.bbox->min_y)},
                         {"max_x", sig6(t.bbox->max_x)},
                         {"max_y", sig6(t.bbox->max_y)}};
    return j;
}

}  // namespace autofb::io
