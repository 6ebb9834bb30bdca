#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "hgseg/error.hpp"
#include "hgseg/image_io.hpp"

namespace hgseg {

namespace {

constexpr std::uint64_t kMaxPixels = std::uint64_t(1) << 28;

class HeaderReader {
public:
    HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::size_t pos() const { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::uint64_t unsigned_value(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        if (pos_ >= bytes_.size()) throw FormatError(std::string("truncated before ") + what, pos_);
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFull) throw FormatError(std::string(what) + " too large", start);
            ++pos_;
        }
        if (pos_ == start) throw FormatError(std::string("expected ") + what, pos_);
        if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
            throw FormatError(std::string("malformed ") + what, pos_);
        }
        return value;
    }

    void single_whitespace() {
        if (pos_ >= bytes_.size()) throw FormatError("truncated header", pos_);
        if (!std::isspace(bytes_[pos_])) throw FormatError("expected whitespace after maxval", pos_);
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
};

std::string header(const char* magic, std::size_t w, std::size_t h, int maxval) {
    return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
           std::to_string(maxval) + "\n";
}

}  // namespace

RgbImage read_ppm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '3')) {
        throw FormatError("not a P6 or P3 image", 0);
    }
    const bool binary = bytes[1] == '6';
    if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
        throw FormatError("malformed magic number", 2);
    }

    HeaderReader in(bytes, 2);
    const std::uint64_t width = in.unsigned_value("width");
    const std::uint64_t height = in.unsigned_value("height");
    in.skip_space_and_comments();
    const std::size_t maxval_at = in.pos();
    const std::uint64_t maxval = in.unsigned_value("maxval");
    if (maxval != 255) throw FormatError("unsupported maxval " + std::to_string(maxval), maxval_at);
    if (width == 0 || height == 0) throw FormatError("zero image dimension", 2);
    if (width * height > kMaxPixels) throw FormatError("image too large", 2);

    RgbImage image(width, height);
    if (binary) {
        in.single_whitespace();
        std::size_t at = in.pos();
        if ((bytes.size() - at) / 3 < image.pixels.size()) {
            throw FormatError("truncated pixel data", bytes.size());
        }
        for (auto& px : image.pixels) {
            px = {bytes[at], bytes[at + 1], bytes[at + 2]};
            at += 3;
        }
        return image;
    }

    auto sample = [&]() -> std::uint8_t {
        in.skip_space_and_comments();
        const std::size_t start = in.pos();
        const std::uint64_t v = in.unsigned_value("sample");
        if (v > 255) throw FormatError("sample exceeds maxval", start);
        return static_cast<std::uint8_t>(v);
    };
    for (auto& px : image.pixels) {
        px.r = sample();
        px.g = sample();
        px.b = sample();
    }
    return image;
}

std::vector<std::uint8_t> write_ppm(const RgbImage& image) {
    const std::string head = header("P6", image.width, image.height, 255);
    std::vector<std::uint8_t> out(head.begin(), head.end());
    out.reserve(out.size() + image.pixels.size() * 3);
    for (const auto& px : image.pixels) {
        out.push_back(px.r);
        out.push_back(px.g);
        out.push_back(px.b);
    }
    return out;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
    const bool wide = image.bit_depth == 16;
    const std::string head = header("P5", image.width, image.height, wide ? 65535 : 255);
    std::vector<std::uint8_t> out(head.begin(), head.end());
    for (auto s : image.samples) {
        if (wide) {
            out.push_back(static_cast<std::uint8_t>(s >> 8));
            out.push_back(static_cast<std::uint8_t>(s & 0xFF));
        } else {
            out.push_back(static_cast<std::uint8_t>(s > 255 ? 255 : s));
        }
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

}  // namespace hgseg
