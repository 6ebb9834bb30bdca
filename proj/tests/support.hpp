#pragma once

// Hand-built fixtures and small helpers shared by the unit tests.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hgseg/graph.hpp"
#include "hgseg/hierarchy.hpp"
#include "hgseg/image_io.hpp"

namespace fixture {

using namespace hgseg;

// Six-vertex example graph, a..f = 0..5. It is also the 4-adjacency graph of
// a 3x2 image whose red channel reads 1 12 7 / 2 3 4.
enum : VertexId { a = 0, b = 1, c = 2, d = 3, e = 4, f = 5 };

inline EdgeWeightedGraph small_graph() {
    EdgeWeightedGraph g(6);
    g.add_edge(a, d, 1);
    g.add_edge(b, a, 11);
    g.add_edge(c, b, 5);
    g.add_edge(b, e, 9);
    g.add_edge(c, f, 3);
    g.add_edge(f, e, 1);
    g.add_edge(e, d, 1);
    return g;
}

inline RgbImage small_image() {
    RgbImage img(3, 2);
    const int red[6] = {1, 12, 7, 2, 3, 4};
    for (std::size_t i = 0; i < 6; ++i) img.pixels[i] = {static_cast<std::uint8_t>(red[i]), 0, 0};
    return img;
}

// Two sub-trees A..E (0..4) and F..I (5..8) joined by the unprocessed link
// B-G of weight 10. Scales describe the sub-region chains
//   B: {B} -> {B,C} at 1 (Int 1) -> {A..E} at 21 (Int 9)
//   G: {G} -> {G,H,I} at 6 (Int 4) -> {F..I} at 12 (Int 8)
enum : VertexId { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7, I = 8 };

struct TwoSided {
    ScaleMap partial;
    WeightedEdge link;
};

inline TwoSided two_sided() {
    TwoSided t;
    t.partial.vertex_count = 9;
    const std::vector<std::pair<WeightedEdge, Scale>> rows = {
        {{B, C, 1, 0}, 1},  {{H, I, 2, 1}, 6},  {{E, D, 2, 2}, 21}, {{D, C, 3, 3}, 21},
        {{G, H, 4, 4}, 6},  {{F, G, 8, 5}, 12}, {{A, B, 9, 6}, 21},
    };
    for (const auto& [edge, scale] : rows) {
        t.partial.edges.push_back(edge);
        t.partial.scales.push_back(scale);
    }
    t.link = {B, G, 10, 7};
    t.partial.edges.push_back(t.link);
    t.partial.scales.push_back(kInfiniteScale);
    return t;
}

/// Scale of the edge joining u and v in a scale map, by endpoints.
inline Scale scale_of(const ScaleMap& map, VertexId u, VertexId v) {
    for (std::size_t i = 0; i < map.edges.size(); ++i) {
        const auto& e = map.edges[i];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return map.scales[i];
    }
    return -1;
}

/// Regions as a set of vertex sets, for order-free comparisons.
inline std::set<std::set<VertexId>> region_sets(const Partition& p) {
    std::set<std::set<VertexId>> out;
    for (const auto& r : p.regions()) out.insert(std::set<VertexId>(r.begin(), r.end()));
    return out;
}

inline std::vector<LeveledEdge> by_weight(std::span<const WeightedEdge> edges) {
    std::vector<LeveledEdge> out;
    for (const auto& e : edges) out.push_back({e.u, e.v, e.weight});
    return out;
}

}  // namespace fixture
