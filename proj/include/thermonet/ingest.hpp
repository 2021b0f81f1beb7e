#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thermonet/timeseries.hpp"

namespace thermonet {

/// Ordered stack of equally sized 16-bit intensity frames.
///
/// Pixels live in one contiguous row-major buffer, frame after frame.
/// Instances are immutable once built.
class FrameSequence {
public:
    /// Validates geometry (every frame width*height samples), fps > 0 and
    /// at least one frame.
    FrameSequence(std::vector<std::vector<std::uint16_t>> frames, int width, int height, double fps,
                  std::string source_id);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double fps() const noexcept { return fps_; }
    const std::string& source_id() const noexcept { return source_id_; }
    std::size_t frame_count() const noexcept { return pixels_.size() / pixels_per_frame(); }
    std::size_t pixels_per_frame() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    double duration_seconds() const noexcept { return static_cast<double>(frame_count()) / fps_; }

    std::span<const std::uint16_t> frame(std::size_t index) const;
    std::uint16_t at(std::size_t index, int x, int y) const;

private:
    std::vector<std::uint16_t> pixels_;
    int width_;
    int height_;
    double fps_;
    std::string source_id_;
};

struct Roi {
    int x0 = 0;
    int y0 = 0;
    int w = 1;
    int h = 1;
};

/// Fraction of total variance carried by each retained component,
/// non-increasing.
struct VarianceReport {
    std::vector<double> explained;
};

enum class FrameFormat { Pgm16, Raw16Le };

/// Reads a JSON frame manifest (fps, width, height, format, frames) and
/// decodes every frame. Relative frame paths resolve against the
/// manifest's directory.
FrameSequence load_frames(const std::filesystem::path& manifest_path);

/// Writes frames as numbered PGM files plus a manifest next to them.
/// Returns the manifest path.
std::filesystem::path save_frames(const FrameSequence& seq, const std::filesystem::path& dir,
                                  FrameFormat format = FrameFormat::Pgm16);

FrameSequence crop(const FrameSequence& seq, const Roi& roi);

/// Per-frame arithmetic mean of all pixels (stage raw-mean, dt = 1/fps).
TimeSeries mean_series(const FrameSequence& seq);

/// Projection of every frame onto the leading principal direction of the
/// frame-by-pixel matrix (pixels centered across time), plus the variance
/// fractions of the first `components` directions. The direction's sign is
/// chosen so the result correlates non-negatively with mean_series.
std::pair<TimeSeries, VarianceReport> pc1_series(const FrameSequence& seq, int components);

/// PGM (P5) codec. Accepts maxval up to 65535; maxval < 256 means one byte
/// per sample, otherwise two bytes big-endian.
struct PgmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;
};
PgmImage read_pgm(const std::filesystem::path& path);
void write_pgm16(const std::filesystem::path& path, int width, int height,
                 std::span<const std::uint16_t> pixels);

std::vector<std::uint16_t> read_raw16le(const std::filesystem::path& path, int width, int height);
void write_raw16le(const std::filesystem::path& path, std::span<const std::uint16_t> pixels);

}  // namespace thermonet
