#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <random>
#include <tuple>
#include <unordered_map>

#include "hgseg/error.hpp"
#include "hgseg/image_io.hpp"

namespace hgseg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint8_t mean_channel(std::uint64_t sum, std::uint64_t count) {
    return static_cast<std::uint8_t>((2 * sum + count) / (2 * count));
}

}  // namespace

RgbImage render_segmentation(const Partition& partition, const RgbImage& image, RenderStyle style,
                             std::uint64_t color_seed) {
    if (partition.vertex_count() != image.pixels.size()) {
        throw InvalidInput("partition does not cover the image");
    }
    std::vector<Rgb> colors(partition.region_count);
    if (style == RenderStyle::mean_color) {
        std::vector<std::array<std::uint64_t, 4>> acc(partition.region_count, {0, 0, 0, 0});
        for (std::size_t i = 0; i < image.pixels.size(); ++i) {
            auto& a = acc[partition.labels[i]];
            a[0] += image.pixels[i].r;
            a[1] += image.pixels[i].g;
            a[2] += image.pixels[i].b;
            ++a[3];
        }
        for (std::size_t r = 0; r < colors.size(); ++r) {
            const auto& a = acc[r];
            colors[r] = {mean_channel(a[0], a[3]), mean_channel(a[1], a[3]), mean_channel(a[2], a[3])};
        }
    } else {
        for (std::size_t r = 0; r < colors.size(); ++r) {
            const std::uint64_t h = splitmix64(color_seed ^ splitmix64(r));
            colors[r] = {static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(h >> 8),
                         static_cast<std::uint8_t>(h >> 16)};
        }
    }
    RgbImage out(image.width, image.height);
    for (std::size_t i = 0; i < out.pixels.size(); ++i) out.pixels[i] = colors[partition.labels[i]];
    return out;
}

Partition area_filter(const Partition& partition, const EdgeWeightedGraph& graph, std::size_t min_area) {
    if (partition.vertex_count() != graph.vertex_count()) {
        throw InvalidInput("partition does not cover the graph");
    }
    const std::size_t count = partition.region_count;
    std::vector<std::size_t> size = partition.region_sizes();
    // Labels are ordered by smallest vertex, so a merged region keeps the
    // smaller of the two.
    std::vector<std::uint32_t> label(count);
    for (std::uint32_t r = 0; r < count; ++r) label[r] = r;

    std::vector<std::unordered_map<std::uint32_t, Weight>> adjacent(count);
    for (const auto& e : graph.edges()) {
        const auto a = partition.labels[e.u], b = partition.labels[e.v];
        if (a == b) continue;
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            auto [it, inserted] = adjacent[x].try_emplace(y, e.weight);
            if (!inserted) it->second = std::min(it->second, e.weight);
        }
    }

    UnionFind merged(count);
    using Entry = std::tuple<std::size_t, std::uint32_t, std::uint32_t>;  // size, label, region
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::uint32_t r = 0; r < count; ++r) {
        if (size[r] < min_area) queue.push({size[r], label[r], r});
    }

    while (!queue.empty()) {
        const auto [sz, lbl, region] = queue.top();
        queue.pop();
        if (merged.find(region) != region || size[region] != sz || label[region] != lbl) continue;
        if (adjacent[region].empty()) continue;

        std::uint32_t target = 0;
        Weight best = 0;
        bool found = false;
        for (auto [nbr, w] : adjacent[region]) {
            if (!found || w < best || (w == best && label[nbr] < label[target])) {
                target = nbr;
                best = w;
                found = true;
            }
        }

        // Fold the smaller adjacency map into the larger one.
        std::uint32_t keep = region, gone = target;
        if (adjacent[keep].size() < adjacent[gone].size()) std::swap(keep, gone);
        adjacent[keep].erase(gone);
        for (auto [nbr, w] : adjacent[gone]) {
            if (nbr == keep) continue;
            auto [it, inserted] = adjacent[keep].try_emplace(nbr, w);
            if (!inserted) it->second = std::min(it->second, w);
            auto& back = adjacent[nbr];
            back.erase(gone);
            auto [jt, fresh] = back.try_emplace(keep, w);
            if (!fresh) jt->second = std::min(jt->second, w);
        }
        adjacent[gone].clear();

        const std::uint32_t root = merged.unite(keep, gone);
        if (root != keep) {
            // keep the bookkeeping on the union-find root
            adjacent[root].swap(adjacent[keep]);
            for (auto& [nbr, w] : adjacent[root]) {
                auto& back = adjacent[nbr];
                const Weight bw = back.at(keep);
                back.erase(keep);
                back[root] = bw;
            }
        }
        size[root] = size[keep] + size[gone];
        label[root] = std::min(label[keep], label[gone]);
        if (size[root] < min_area) queue.push({size[root], label[root], root});
    }

    std::vector<std::uint32_t> keys(partition.vertex_count());
    for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = merged.find(partition.labels[i]);
    return Partition::from_keys(keys);
}

RgbImage add_salt_noise(const RgbImage& image, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("noise probability must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    RgbImage out = image;
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    for (auto& px : out.pixels) {
        const double u = static_cast<double>(rng() >> 11) * kScale;
        if (u < p) px = {255, 255, 255};
    }
    return out;
}

}  // namespace hgseg
