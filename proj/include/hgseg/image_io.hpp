#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hgseg/graph.hpp"

namespace hgseg {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster.
struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;

    RgbImage() = default;
    RgbImage(std::size_t w, std::size_t h, Rgb fill = {}) : width(w), height(h), pixels(w * h, fill) {}

    Rgb& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
    const Rgb& at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    GridShape shape() const { return {width, height}; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Row-major grayscale raster; samples above 255 require bit_depth 16.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    int bit_depth = 8;
    std::vector<std::uint16_t> samples;

    std::uint16_t& at(std::size_t row, std::size_t col) { return samples[row * width + col]; }
    std::uint16_t at(std::size_t row, std::size_t col) const { return samples[row * width + col]; }
};

// Netpbm codecs. Only maxval 255 is accepted on input.
RgbImage read_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_ppm(const RgbImage& image);
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

enum class RenderStyle { mean_color, random_color };

RgbImage render_segmentation(const Partition& partition, const RgbImage& image,
                             RenderStyle style = RenderStyle::mean_color,
                             std::uint64_t color_seed = 0);

/// Absorbs regions smaller than `min_area` vertices, smallest first, into the
/// neighbour reached by the lightest connecting edge (ties go to the
/// neighbour with the smaller label).
Partition area_filter(const Partition& partition, const EdgeWeightedGraph& graph,
                      std::size_t min_area);

/// Replaces each pixel by white with probability `p`, drawing one 53-bit
/// uniform from std::mt19937_64(seed) per pixel in row-major order.
RgbImage add_salt_noise(const RgbImage& image, double p, std::uint64_t seed);

}  // namespace hgseg
