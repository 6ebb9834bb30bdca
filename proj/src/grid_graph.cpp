#include "hgseg/grid_graph.hpp"

#include "hgseg/error.hpp"
#include "hgseg/simd/edge_weight_kernels.hpp"

namespace hgseg {

namespace {

struct Planes {
    std::vector<std::uint8_t> r, g, b;

    explicit Planes(const RgbImage& image) : r(image.pixels.size()), g(r.size()), b(r.size()) {
        for (std::size_t i = 0; i < image.pixels.size(); ++i) {
            r[i] = image.pixels[i].r;
            g[i] = image.pixels[i].g;
            b[i] = image.pixels[i].b;
        }
    }
    simd::PlanarRow row(std::size_t offset) const { return {&r[offset], &g[offset], &b[offset]}; }
};

}  // namespace

EdgeWeightedGraph build_grid_graph(const RgbImage& image, const WeightQuantizer& quantizer) {
    const std::size_t w = image.width, h = image.height;
    if (w == 0 || h == 0) throw InvalidInput("empty image");
    if (image.pixels.size() != w * h) throw InvalidInput("pixel buffer does not match image size");

    const Planes planes(image);
    std::vector<std::uint32_t> right(w > 1 ? w - 1 : 0), down(w);
    std::vector<WeightedEdge> edges;
    edges.reserve((w - 1) * h + w * (h - 1));

    auto weight_of = [&](std::size_t p, std::size_t q, std::uint32_t kernel_weight) -> Weight {
        if (!quantizer) return kernel_weight;
        const int dr = int(image.pixels[p].r) - int(image.pixels[q].r);
        const int dg = int(image.pixels[p].g) - int(image.pixels[q].g);
        const int db = int(image.pixels[p].b) - int(image.pixels[q].b);
        return quantizer(static_cast<std::uint32_t>(dr * dr + dg * dg + db * db));
    };

    for (std::size_t row = 0; row < h; ++row) {
        const std::size_t base = row * w;
        if (!quantizer) {
            if (w > 1) simd::edge_weights(planes.row(base), planes.row(base + 1), w - 1, right.data());
            if (row + 1 < h) simd::edge_weights(planes.row(base), planes.row(base + w), w, down.data());
        }
        for (std::size_t col = 0; col < w; ++col) {
            const std::size_t p = base + col;
            if (col + 1 < w) {
                edges.push_back({static_cast<VertexId>(p), static_cast<VertexId>(p + 1),
                                 weight_of(p, p + 1, quantizer ? 0 : right[col]),
                                 static_cast<EdgeId>(edges.size())});
            }
            if (row + 1 < h) {
                edges.push_back({static_cast<VertexId>(p), static_cast<VertexId>(p + w),
                                 weight_of(p, p + w, quantizer ? 0 : down[col]),
                                 static_cast<EdgeId>(edges.size())});
            }
        }
    }

    return EdgeWeightedGraph(w * h, std::move(edges), GridShape{w, h});
}

}  // namespace hgseg
