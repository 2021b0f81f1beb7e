#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "thermonet/error.hpp"
#include "thermonet/ingest.hpp"

namespace thermonet {

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_usage("missing-file", "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Reads one whitespace-delimited header token, skipping '#' comments.
class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
        : bytes_(bytes), path_(path) {}

    long next_int() {
        skip_space_and_comments();
        long value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            ++pos_;
            if (++digits > 9) fail_data("bad-pgm", path_.string() + ": header value too long");
        }
        if (digits == 0) fail_data("bad-pgm", path_.string() + ": malformed header");
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            fail_data("bad-pgm", path_.string() + ": missing raster separator");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 2;
};

}  // namespace

PgmImage read_pgm(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        fail_data("bad-pgm", path.string() + ": not a binary PGM (P5)");
    }
    HeaderReader header(bytes, path);
    PgmImage img;
    img.width = static_cast<int>(header.next_int());
    img.height = static_cast<int>(header.next_int());
    const long maxval = header.next_int();
    if (img.width < 1 || img.height < 1) fail_data("bad-pgm", path.string() + ": empty raster");
    if (maxval < 1 || maxval > 65535) {
        fail_data("bit-depth", path.string() + ": maxval " + std::to_string(maxval) +
                                   " exceeds 16 bits");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
    const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
    if (bytes.size() - offset < count * bytes_per_sample) {
        fail_data("geometry-mismatch", path.string() + ": raster shorter than " +
                                           std::to_string(img.width) + "x" +
                                           std::to_string(img.height));
    }
    img.pixels.resize(count);
    const unsigned char* raster = bytes.data() + offset;
    for (std::size_t i = 0; i < count; ++i) {
        img.pixels[i] = bytes_per_sample == 1
                            ? raster[i]
                            : static_cast<std::uint16_t>((raster[2 * i] << 8) | raster[2 * i + 1]);
        if (img.pixels[i] > maxval) {
            fail_data("bad-pgm", path.string() + ": sample exceeds declared maxval");
        }
    }
    return img;
}

void write_pgm16(const std::filesystem::path& path, int width, int height,
                 std::span<const std::uint16_t> pixels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_usage("unwritable-file", "cannot write " + path.string());
    out << "P5\n" << width << ' ' << height << "\n65535\n";
    for (auto v : pixels) {
        const char be[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
        out.write(be, 2);
    }
}

std::vector<std::uint16_t> read_raw16le(const std::filesystem::path& path, int width, int height) {
    const auto bytes = slurp(path);
    const std::size_t count = static_cast<std::size_t>(width) * height;
    if (bytes.size() != count * 2) {
        fail_data("geometry-mismatch", path.string() + ": " + std::to_string(bytes.size()) +
                                           " bytes, expected " + std::to_string(count * 2));
    }
    std::vector<std::uint16_t> pixels(count);
    for (std::size_t i = 0; i < count; ++i) {
        pixels[i] = static_cast<std::uint16_t>(bytes[2 * i] | (bytes[2 * i + 1] << 8));
    }
    return pixels;
}

void write_raw16le(const std::filesystem::path& path, std::span<const std::uint16_t> pixels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_usage("unwritable-file", "cannot write " + path.string());
    for (auto v : pixels) {
        const char le[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
        out.write(le, 2);
    }
}

}  // namespace thermonet
