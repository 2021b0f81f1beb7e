#include "thermonet/ingest.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "thermonet/error.hpp"
#include "thermonet/simd/kernels.hpp"

namespace thermonet {

namespace fs = std::filesystem;

FrameSequence::FrameSequence(std::vector<std::vector<std::uint16_t>> frames, int width, int height,
                             double fps, std::string source_id)
    : width_(width), height_(height), fps_(fps), source_id_(std::move(source_id)) {
    if (frames.empty()) fail_usage("empty-sequence", "frame sequence needs at least one frame");
    if (width < 1 || height < 1) fail_usage("bad-geometry", "frame width and height must be >= 1");
    if (!(fps > 0.0) || !std::isfinite(fps)) fail_usage("bad-fps", "fps must be positive");
    const std::size_t ppf = pixels_per_frame();
    pixels_.reserve(ppf * frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].size() != ppf) {
            fail_data("geometry-mismatch", "frame " + std::to_string(i) + " holds " +
                                               std::to_string(frames[i].size()) +
                                               " pixels, expected " + std::to_string(ppf));
        }
        pixels_.insert(pixels_.end(), frames[i].begin(), frames[i].end());
    }
}

std::span<const std::uint16_t> FrameSequence::frame(std::size_t index) const {
    const std::size_t ppf = pixels_per_frame();
    return std::span<const std::uint16_t>(pixels_).subspan(index * ppf, ppf);
}

std::uint16_t FrameSequence::at(std::size_t index, int x, int y) const {
    return frame(index)[static_cast<std::size_t>(y) * width_ + x];
}

FrameSequence load_frames(const fs::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) fail_usage("missing-file", "cannot open manifest " + manifest_path.string());

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail_data("bad-manifest", manifest_path.string() + ": " + e.what());
    }

    double fps = 0.0;
    int width = 0;
    int height = 0;
    std::string format;
    std::vector<std::string> names;
    try {
        fps = doc.at("fps").get<double>();
        width = doc.at("width").get<int>();
        height = doc.at("height").get<int>();
        format = doc.value("format", std::string("pgm16"));
        names = doc.at("frames").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        fail_data("bad-manifest", manifest_path.string() + ": " + e.what());
    }
    if (names.empty()) fail_data("empty-manifest", manifest_path.string() + " lists no frames");
    if (format != "pgm16" && format != "raw16le") {
        fail_data("bad-manifest", manifest_path.string() + ": unknown format '" + format + "'");
    }
    if (width < 1 || height < 1) {
        fail_data("bad-manifest", manifest_path.string() + ": width and height must be >= 1");
    }

    const fs::path base = manifest_path.parent_path();
    std::vector<std::vector<std::uint16_t>> frames;
    frames.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        const fs::path frame_path = base / names[i];
        if (!fs::exists(frame_path)) {
            fail_usage("missing-file",
                       "frame " + std::to_string(i) + " not found: " + frame_path.string());
        }
        if (format == "raw16le") {
            frames.push_back(read_raw16le(frame_path, width, height));
            continue;
        }
        PgmImage img = read_pgm(frame_path);
        if (img.width != width || img.height != height) {
            fail_data("geometry-mismatch",
                      "frame " + std::to_string(i) + " (" + frame_path.string() + ") is " +
                          std::to_string(img.width) + "x" + std::to_string(img.height) +
                          ", manifest declares " + std::to_string(width) + "x" +
                          std::to_string(height));
        }
        frames.push_back(std::move(img.pixels));
    }
    return FrameSequence(std::move(frames), width, height, fps, manifest_path.stem().string());
}

fs::path save_frames(const FrameSequence& seq, const fs::path& dir, FrameFormat format) {
    fs::create_directories(dir);
    nlohmann::json names = nlohmann::json::array();
    const char* ext = format == FrameFormat::Pgm16 ? "pgm" : "raw";
    for (std::size_t i = 0; i < seq.frame_count(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05zu.%s", i, ext);
        if (format == FrameFormat::Pgm16) {
            write_pgm16(dir / name, seq.width(), seq.height(), seq.frame(i));
        } else {
            write_raw16le(dir / name, seq.frame(i));
        }
        names.push_back(name);
    }
    nlohmann::ordered_json manifest;
    manifest["fps"] = seq.fps();
    manifest["width"] = seq.width();
    manifest["height"] = seq.height();
    manifest["format"] = format == FrameFormat::Pgm16 ? "pgm16" : "raw16le";
    manifest["frames"] = names;
    const fs::path manifest_path = dir / "manifest.json";
    std::ofstream out(manifest_path);
    if (!out) fail_usage("unwritable-file", "cannot write " + manifest_path.string());
    out << manifest.dump(2) << '\n';
    return manifest_path;
}

FrameSequence crop(const FrameSequence& seq, const Roi& roi) {
    if (roi.w < 1 || roi.h < 1 || roi.x0 < 0 || roi.y0 < 0 || roi.x0 + roi.w > seq.width() ||
        roi.y0 + roi.h > seq.height()) {
        fail_usage("roi-out-of-bounds",
                   "roi " + std::to_string(roi.x0) + "," + std::to_string(roi.y0) + "," +
                       std::to_string(roi.w) + "," + std::to_string(roi.h) + " exceeds " +
                       std::to_string(seq.width()) + "x" + std::to_string(seq.height()));
    }
    std::vector<std::vector<std::uint16_t>> frames(seq.frame_count());
    for (std::size_t t = 0; t < seq.frame_count(); ++t) {
        const auto src = seq.frame(t);
        auto& dst = frames[t];
        dst.reserve(static_cast<std::size_t>(roi.w) * roi.h);
        for (int y = roi.y0; y < roi.y0 + roi.h; ++y) {
            const auto row = src.subspan(static_cast<std::size_t>(y) * seq.width() + roi.x0, roi.w);
            dst.insert(dst.end(), row.begin(), row.end());
        }
    }
    return FrameSequence(std::move(frames), roi.w, roi.h, seq.fps(), seq.source_id());
}

TimeSeries mean_series(const FrameSequence& seq) {
    const auto& k = simd::active_kernels();
    const double ppf = static_cast<double>(seq.pixels_per_frame());
    std::vector<double> values(seq.frame_count());
    for (std::size_t t = 0; t < values.size(); ++t) {
        values[t] = static_cast<double>(k.sum_u16(seq.frame(t))) / ppf;
    }
    return TimeSeries(std::move(values), 1.0 / seq.fps(), seq.source_id(), Stage::RawMean);
}

std::pair<TimeSeries, VarianceReport> pc1_series(const FrameSequence& seq, int components) {
    const auto frames = static_cast<Eigen::Index>(seq.frame_count());
    const auto pixels = static_cast<Eigen::Index>(seq.pixels_per_frame());
    if (frames < 2) fail_usage("too-few-frames", "PCA needs at least two frames");
    if (components < 1) fail_usage("bad-components", "component count must be >= 1");

    Eigen::MatrixXd data(frames, pixels);
    for (Eigen::Index t = 0; t < frames; ++t) {
        const auto f = seq.frame(static_cast<std::size_t>(t));
        for (Eigen::Index p = 0; p < pixels; ++p) data(t, p) = f[static_cast<std::size_t>(p)];
    }
    data.rowwise() -= data.colwise().mean();

    const double total = data.squaredNorm();
    if (!(total > 0.0)) fail_data("zero-variance", "all frames are identical");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();

    VarianceReport report;
    const Eigen::Index keep = std::min<Eigen::Index>(components, sv.size());
    for (Eigen::Index i = 0; i < keep; ++i) {
        report.explained.push_back(std::min(1.0, sv(i) * sv(i) / total));
    }

    Eigen::VectorXd scores = svd.matrixU().col(0) * sv(0);

    const TimeSeries means = mean_series(seq);
    const Eigen::Map<const Eigen::VectorXd> mean_view(means.values().data(), frames);
    const double alignment = scores.dot(mean_view.array().matrix() -
                                        Eigen::VectorXd::Constant(frames, mean_view.mean()));
    if (alignment < 0.0) scores = -scores;

    std::vector<double> values(scores.data(), scores.data() + frames);
    return {TimeSeries(std::move(values), 1.0 / seq.fps(), seq.source_id(), Stage::Pc1),
            std::move(report)};
}

}  // namespace thermonet
