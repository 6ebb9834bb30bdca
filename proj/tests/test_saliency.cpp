#include <random>

#include "doctest.h"
#include "hgseg/error.hpp"
#include "hgseg/grid_graph.hpp"
#include "hgseg/oracle.hpp"
#include "hgseg/saliency.hpp"
#include "support.hpp"

using namespace hgseg;
using fixture::a, fixture::b, fixture::c, fixture::d, fixture::e, fixture::f;

namespace {

std::vector<Scale> values(const SaliencyMap& sal) {
    std::vector<Scale> out;
    for (const auto& e : sal.edges) out.push_back(e.value);
    return out;
}

}  // namespace

TEST_CASE("ultrametric distances of the example graph") {
    const auto map = compute_hierarchy(kruskal_mst(fixture::small_graph()));
    CHECK(ultrametric(map, a, d) == 1);
    CHECK(ultrametric(map, b, e) == 10);
    CHECK(ultrametric(map, c, a) == 8);
    CHECK(ultrametric(map, f, f) == 0);

    const auto sal = saliency_map(map, fixture::small_graph());
    CHECK(values(sal) == std::vector<Scale>{1, 10, 10, 10, 8, 1, 1});
    CHECK(sal.boundary_edges(8) == std::vector<std::size_t>{1, 2, 3});
    CHECK(sal.boundary_edges(0).size() == 7);
    CHECK(sal.boundary_edges(10).empty());
}

TEST_CASE("no path between separate components") {
    EdgeWeightedGraph g(3);
    g.add_edge(0, 1, 2);
    const auto map = compute_hierarchy(kruskal_mst(g));
    CHECK_THROWS_AS(ultrametric(map, 0, 2), NoPath);
}

TEST_CASE("lowest common ancestors agree with tree path maxima") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng);
        const auto map = compute_hierarchy(kruskal_mst(g));
        const auto sal = saliency_map(map, g);
        REQUIRE(sal.edges.size() == g.edges().size());
        for (std::size_t i = 0; i < sal.edges.size(); ++i) {
            CHECK(sal.edges[i].u == g.edges()[i].u);
            CHECK(sal.edges[i].value == ultrametric(map, g.edges()[i].u, g.edges()[i].v));
        }
        CHECK(values(saliency_map(merge_tree(map), g)) == values(sal));
    }
}

TEST_CASE("boundaries above lambda are exactly the cut boundaries") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto image = oracle::synthetic_image(12, 9, rng());
        const auto g = build_grid_graph(image);
        const auto map = compute_hierarchy(g, kruskal_mst(g));
        const auto sal = saliency_map(map, g);
        for (auto lambda : map.distinct_scales()) {
            for (auto level : {lambda - 1, lambda}) {
                const auto p = cut(map, level);
                std::vector<std::size_t> expected;
                for (std::size_t i = 0; i < g.edges().size(); ++i) {
                    if (p.labels[g.edges()[i].u] != p.labels[g.edges()[i].v]) expected.push_back(i);
                }
                CHECK(sal.boundary_edges(level) == expected);
            }
        }
    }
}

TEST_CASE("strong triangle inequality") {
    std::mt19937_64 rng(33);
    const auto g = build_grid_graph(oracle::synthetic_image(10, 10, 3));
    const auto map = compute_hierarchy(g, kruskal_mst(g));
    for (int k = 0; k < 300; ++k) {
        const auto p = VertexId(oracle::uniform(rng, 0, 99));
        const auto q = VertexId(oracle::uniform(rng, 0, 99));
        const auto r = VertexId(oracle::uniform(rng, 0, 99));
        CHECK(ultrametric(map, p, r) <= std::max(ultrametric(map, p, q), ultrametric(map, q, r)));
        CHECK(ultrametric(map, p, q) == ultrametric(map, q, p));
    }
}

TEST_CASE("contour image of the example image") {
    const auto image = fixture::small_image();
    const auto g = build_grid_graph(image);
    const auto sal = saliency_map(compute_hierarchy(g, kruskal_mst(g)), g);

    const auto lin = render_contours(sal, image.shape(), Normalization::linear);
    REQUIRE(lin.width == 5);
    REQUIRE(lin.height == 3);
    CHECK(lin.bit_depth == 8);
    CHECK(lin.samples == std::vector<std::uint16_t>{
                             0,  255, 0,   255, 0,    //
                             26, 255, 255, 255, 204,  //
                             0,  26,  0,   26,  0,
                         });

    const auto lg = render_contours(sal, image.shape(), Normalization::log);
    CHECK(lg.at(1, 0) == 74);   // log 2 / log 11
    CHECK(lg.at(1, 4) == 234);  // log 9 / log 11
    CHECK(lg.at(0, 1) == 255);

    const auto inv = render_contours(sal, image.shape(), Normalization::linear, true);
    CHECK(inv.at(0, 0) == 255);
    CHECK(inv.at(0, 1) == 0);
    CHECK(inv.at(1, 0) == 229);
}

TEST_CASE("contour images of trivial inputs") {
    RgbImage pair(2, 1);
    pair.at(0, 1) = {0, 0, 40};
    auto g = build_grid_graph(pair);
    auto sal = saliency_map(compute_hierarchy(g, kruskal_mst(g)), g);
    const auto two = render_contours(sal, pair.shape(), Normalization::linear);
    CHECK(two.width == 3);
    CHECK(two.height == 1);
    CHECK(two.samples == std::vector<std::uint16_t>{0, 255, 0});

    const RgbImage flat(3, 3, {50, 50, 50});
    g = build_grid_graph(flat);
    sal = saliency_map(compute_hierarchy(g, kruskal_mst(g)), g);
    const auto uniform = render_contours(sal, flat.shape(), Normalization::linear);
    for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t col = 0; col < 5; ++col) {
            CHECK(uniform.at(r, col) == ((r % 2 == 0 && col % 2 == 0) ? 0 : 255));
        }
    }

    const auto one = build_grid_graph(RgbImage(1, 1));
    const auto single = render_contours(saliency_map(compute_hierarchy(one, kruskal_mst(one)), one),
                                        {1, 1}, Normalization::linear);
    CHECK(single.samples == std::vector<std::uint16_t>{0});
}

TEST_CASE("sixteen-bit output for large saliency") {
    EdgeWeightedGraph g(2, GridShape{2, 1});
    g.add_edge(0, 1, 300);
    const auto sal = saliency_map(compute_hierarchy(kruskal_mst(g)), g);
    CHECK(sal.edges[0].value == 300);
    const auto img = render_contours(sal, {2, 1}, Normalization::linear);
    CHECK(img.bit_depth == 16);
    CHECK(img.samples == std::vector<std::uint16_t>{0, 65535, 0});
}

TEST_CASE("non-grid edges are rejected by the renderer") {
    EdgeWeightedGraph g(3);
    g.add_edge(0, 2, 1);
    g.add_edge(0, 1, 1);
    const auto sal = saliency_map(compute_hierarchy(kruskal_mst(g)), g);
    CHECK_THROWS_AS(render_contours(sal, {3, 1}, Normalization::linear), UnsupportedTopology);

    const auto sq = build_grid_graph(RgbImage(2, 2));
    const auto grid_sal = saliency_map(compute_hierarchy(sq, kruskal_mst(sq)), sq);
    CHECK_THROWS_AS(render_contours(grid_sal, {4, 1}, Normalization::linear), UnsupportedTopology);
}
