#include <random>

#include "doctest.h"
#include "hgseg/error.hpp"
#include "hgseg/merge_tree.hpp"
#include "hgseg/oracle.hpp"
#include "hgseg/saliency.hpp"
#include "support.hpp"

using namespace hgseg;
using fixture::a, fixture::b, fixture::c, fixture::d, fixture::e, fixture::f;

TEST_CASE("merge tree of the example graph") {
    const auto tree = merge_tree(compute_hierarchy(kruskal_mst(fixture::small_graph())));
    REQUIRE(tree.vertex_count() == 6);
    REQUIRE(tree.internal_count() == 3);

    const auto& low = tree.node(6);
    CHECK(low.scale == 1);
    CHECK(low.size == 4);
    CHECK(low.internal_difference == 1);
    CHECK(low.children == std::vector<std::uint32_t>{a, d, e, f});

    const auto& mid = tree.node(7);
    CHECK(mid.scale == 8);
    CHECK(mid.size == 5);
    CHECK(mid.internal_difference == 3);
    CHECK(mid.children == std::vector<std::uint32_t>{c, 6});

    const auto& top = tree.node(8);
    CHECK(top.scale == 10);
    CHECK(top.size == 6);
    CHECK(top.children == std::vector<std::uint32_t>{b, 7});
    CHECK(tree.roots() == std::vector<std::uint32_t>{8});

    CHECK(tree.merge_scale(a, d) == 1);
    CHECK(tree.merge_scale(c, f) == 8);
    CHECK(tree.merge_scale(b, e) == 10);
    CHECK(tree.merge_scale(c, c) == 0);

    CHECK(tree.to_text() ==
          "merge_tree vertices=6 internal_nodes=3 roots=1\n"
          "node id=6 scale=1 size=4 int=1 children=0,3,4,5\n"
          "node id=7 scale=8 size=5 int=3 children=2,6\n"
          "node id=8 scale=10 size=6 int=5 children=1,7\n");
}

TEST_CASE("two vertices and a single vertex") {
    EdgeWeightedGraph pair(2);
    pair.add_edge(0, 1, 4);
    const auto tree = merge_tree(compute_hierarchy(kruskal_mst(pair)));
    REQUIRE(tree.internal_count() == 1);
    CHECK(tree.node(2).scale == 4);
    CHECK(tree.node(2).children == std::vector<std::uint32_t>{0, 1});
    CHECK(tree.node(0).parent == 2);

    const auto lone = merge_tree(compute_hierarchy(kruskal_mst(EdgeWeightedGraph(1))));
    CHECK(lone.internal_count() == 0);
    CHECK(lone.roots() == std::vector<std::uint32_t>{0});
}

TEST_CASE("forest trees have several roots and no cross path") {
    EdgeWeightedGraph g(4);
    g.add_edge(0, 1, 2);
    g.add_edge(2, 3, 5);
    const auto tree = merge_tree(compute_hierarchy(kruskal_mst(g)));
    CHECK(tree.roots().size() == 2);
    CHECK_THROWS_AS(tree.merge_scale(0, 3), NoPath);
}

TEST_CASE("flatten equals cut and lca equals path maximum") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng);
        const auto map = compute_hierarchy(kruskal_mst(g));
        const auto tree = merge_tree(map);

        std::vector<Scale> levels = {0};
        for (auto s : map.distinct_scales()) {
            levels.push_back(s - 1);
            levels.push_back(s);
        }
        for (auto lambda : levels) CHECK(tree.flatten(lambda) == cut(map, lambda));

        // scales strictly increase upwards and sizes add up
        for (std::uint32_t id = std::uint32_t(tree.vertex_count()); id < tree.nodes().size(); ++id) {
            const auto& node = tree.node(id);
            std::int64_t total = 0;
            for (auto child : node.children) {
                CHECK(tree.node(child).scale < node.scale);
                CHECK(tree.node(child).parent == id);
                total += tree.node(child).size;
            }
            CHECK(total == node.size);
            CHECK(node.children.size() >= 2);
        }
        CHECK(tree.internal_count() <= g.vertex_count() - 1);

        for (int k = 0; k < 30; ++k) {
            const auto p = VertexId(oracle::uniform(rng, 0, std::int64_t(g.vertex_count()) - 1));
            const auto q = VertexId(oracle::uniform(rng, 0, std::int64_t(g.vertex_count()) - 1));
            CHECK(tree.merge_scale(p, q) == ultrametric(map, p, q));
        }
    }
}

TEST_CASE("partial scale maps are rejected") {
    auto map = compute_hierarchy(kruskal_mst(fixture::small_graph()));
    map.scales[2] = kInfiniteScale;
    CHECK_THROWS_AS(merge_tree(map), InvalidInput);
}
