#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "autofb/io/batch.hpp"
#include "autofb/phantom.hpp"

using namespace autofb;
namespace fs = std::filesystem;

namespace {

struct Corpus {
    fs::path root;
    fs::path masks;
    fs::path images;
    std::vector<io::json> truths;
};

// Writes n phantom triplets (mask, ruler frame, truth) under a temp dir.
Corpus make_corpus(const std::string& name, int n, std::uint64_t seed) {
    Corpus c;
    c.root = fs::temp_directory_path() / ("autofb_batch_" + name);
    fs::remove_all(c.root);
    c.masks = c.root / "masks";
    c.images = c.root / "images";
    fs::create_directories(c.masks);
    fs::create_directories(c.images);
    for (int i = 0; i < n; ++i) {
        const auto kind = static_cast<PlaneClass>(i % 3);
        auto spec = random_phantom(kind, seed + i);
        auto [mask, truth] = render_mask(spec);
        char id[32];
        std::snprintf(id, sizeof id, "phantom_%03d", i);
        io::save_mask(c.masks / (std::string(id) + ".png"), mask);
        io::save_gray(c.images / (std::string(id) + ".png"), render_ruler(spec));
        c.truths.push_back(io::to_json(truth));
    }
    return c;
}

}  // namespace

TEST_CASE("run_measure_batch: phantom triplets measure within tolerance") {
    auto corpus = make_corpus("ok", 3, 42);
    io::RunConfig config;
    config.masks_dir = corpus.masks;
    config.images_dir = corpus.images;
    config.scale_mode = io::ScaleMode::Ruler;

    io::BatchSummary summary;
    auto doc = io::run_measure_batch(config, &summary);
    CHECK(summary.ok == 3);
    CHECK(summary.failed == 0);
    REQUIRE(doc.entries.size() == 3);

    int i = 0;
    for (const auto& [id, entry] : doc.entries) {
        REQUIRE(entry.report.has_value());
        const auto& truth = corpus.truths[i++];
        for (const auto& [name, m] : truth["measurements"].items()) {
            const double expected = m["mm"].get<double>();
            const double got = entry.report->measurements.at(name).value_mm;
            CHECK_THAT(got, Catch::Matchers::WithinRel(expected, 0.03));
        }
    }
}

TEST_CASE("run_measure_batch: a bad mask is isolated, others succeed") {
    auto corpus = make_corpus("isolated", 3, 77);
    // Drop in one all-background mask (id sorts into the middle).
    io::save_mask(corpus.masks / "phantom_0015.png", LabelMask(64, 64));
    io::save_gray(corpus.images / "phantom_0015.png", GrayImage(64, 64, 0));

    io::RunConfig config;
    config.masks_dir = corpus.masks;
    config.images_dir = corpus.images;
    config.scale_mode = io::ScaleMode::Fixed;
    config.fixed_px_per_mm = 5.0;

    io::BatchSummary summary;
    auto doc = io::run_measure_batch(config, &summary);
    CHECK(summary.ok == 3);
    CHECK(summary.failed == 1);
    CHECK(doc.entries.at("phantom_0015").error_code == "NoAnatomy");
    CHECK(doc.entries.at("phantom_000").report.has_value());
    CHECK(doc.entries.at("phantom_002").report.has_value());
}

TEST_CASE("run_measure_batch: empty input directory raises NoInputs") {
    const fs::path dir = fs::temp_directory_path() / "autofb_batch_empty";
    fs::remove_all(dir);
    fs::create_directories(dir);
    io::RunConfig config;
    config.masks_dir = dir;
    config.scale_mode = io::ScaleMode::Fixed;
    config.fixed_px_per_mm = 1.0;
    CHECK_THROWS_AS(io::run_measure_batch(config), NoInputs);
}

TEST_CASE("run_measure_batch: byte-identical documents across runs and job counts") {
    auto corpus = make_corpus("determinism", 6, 2024);
    io::RunConfig config;
    config.masks_dir = corpus.masks;
    config.images_dir = corpus.images;
    config.scale_mode = io::ScaleMode::Ruler;

    auto first = io::serialize(io::to_json(io::run_measure_batch(config)));
    auto second = io::serialize(io::to_json(io::run_measure_batch(config)));
    CHECK(first == second);

    config.jobs = 4;
    auto parallel = io::serialize(io::to_json(io::run_measure_batch(config)));
    CHECK(first == parallel);
}

TEST_CASE("run_measure_batch: missing frame in ruler mode is a per-image error") {
    auto corpus = make_corpus("noframe", 2, 11);
    fs::remove(corpus.images / "phantom_001.png");

    io::RunConfig config;
    config.masks_dir = corpus.masks;
    config.images_dir = corpus.images;
    config.scale_mode = io::ScaleMode::Ruler;

    auto doc = io::run_measure_batch(config);
    CHECK(doc.entries.at("phantom_000").report.has_value());
    CHECK(doc.entries.at("phantom_001").error_code == "UnreadableFile");
}
