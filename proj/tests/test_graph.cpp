#include <cmath>
#include <random>

#include "doctest.h"
#include "hgseg/error.hpp"
#include "hgseg/graph.hpp"
#include "hgseg/grid_graph.hpp"
#include "hgseg/oracle.hpp"
#include "support.hpp"

using namespace hgseg;
using fixture::a, fixture::b, fixture::c, fixture::d, fixture::e, fixture::f;

namespace {

Weight brute_weight(Rgb p, Rgb q) {
    const double dr = double(p.r) - q.r, dg = double(p.g) - q.g, db = double(p.b) - q.b;
    return static_cast<Weight>(std::floor(std::sqrt(dr * dr + dg * dg + db * db) + 0.5));
}

}  // namespace

TEST_CASE("uniform 2x2 image has four zero-weight edges") {
    const RgbImage img(2, 2, {10, 20, 30});
    const auto g = build_grid_graph(img);
    REQUIRE(g.vertex_count() == 4);
    REQUIRE(g.edges().size() == 4);
    for (const auto& edge : g.edges()) CHECK(edge.weight == 0);
    CHECK(g.grid() == GridShape{2, 2});
}

TEST_CASE("two-pixel image has a single 3-4-5 edge") {
    RgbImage img(2, 1);
    img.at(0, 1) = {3, 4, 0};
    const auto g = build_grid_graph(img);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0] == WeightedEdge{0, 1, 5, 0});
}

TEST_CASE("grid edges follow row-major order, right neighbour first") {
    std::mt19937_64 rng(7);
    RgbImage img(3, 3);
    for (auto& p : img.pixels) {
        p = {std::uint8_t(rng()), std::uint8_t(rng()), std::uint8_t(rng())};
    }
    const auto g = build_grid_graph(img);
    std::vector<WeightedEdge> expected;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t col = 0; col < 3; ++col) {
            const auto v = VertexId(r * 3 + col);
            if (col + 1 < 3) expected.push_back({v, v + 1, brute_weight(img.pixels[v], img.pixels[v + 1])});
            if (r + 1 < 3) expected.push_back({v, v + 3, brute_weight(img.pixels[v], img.pixels[v + 3])});
        }
    }
    REQUIRE(g.edges().size() == 12);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        expected[i].id = EdgeId(i);
        CHECK(g.edges()[i] == expected[i]);
    }
}

TEST_CASE("single-pixel and single-row images") {
    CHECK(build_grid_graph(RgbImage(1, 1)).edges().empty());
    CHECK(build_grid_graph(RgbImage(5, 1)).edges().size() == 4);
    CHECK(build_grid_graph(RgbImage(1, 5)).edges().size() == 4);
    CHECK_THROWS_AS(build_grid_graph(RgbImage(0, 0)), InvalidInput);
}

TEST_CASE("custom quantizer receives squared distances") {
    RgbImage img(2, 1);
    img.at(0, 1) = {3, 4, 0};
    const auto g = build_grid_graph(img, [](std::uint32_t d2) { return Weight(d2); });
    CHECK(g.edges()[0].weight == 25);
}

TEST_CASE("graph validation") {
    EdgeWeightedGraph g(3);
    CHECK(g.add_edge(0, 1, 2) == 0);
    CHECK_THROWS_AS(g.add_edge(1, 1, 0), InvalidInput);
    CHECK_THROWS_AS(g.add_edge(0, 3, 0), InvalidInput);
    CHECK_THROWS_AS(g.add_edge(1, 0, 4), InvalidInput);
    CHECK_THROWS_AS(g.add_edge(1, 2, -1), InvalidInput);
    CHECK_THROWS_AS(EdgeWeightedGraph(2, {{0, 1, 1}, {0, 1, 2}}), InvalidInput);

    const EdgeWeightedGraph h(3, {{0, 1, 4, 99}, {1, 2, 6, 42}});
    CHECK(h.edges()[0].id == 0);
    CHECK(h.edges()[1].id == 1);
    CHECK(h.max_weight() == 6);
}

TEST_CASE("kruskal on the six-vertex example") {
    const auto mst = kruskal_mst(fixture::small_graph());
    const std::vector<WeightedEdge> expected = {
        {a, d, 1, 0}, {f, e, 1, 5}, {e, d, 1, 6}, {c, f, 3, 4}, {c, b, 5, 2},
    };
    CHECK(mst.edges == expected);
    CHECK(mst.vertex_count == 6);
}

TEST_CASE("kruskal degenerate inputs") {
    CHECK(kruskal_mst(EdgeWeightedGraph(1)).edges.empty());

    EdgeWeightedGraph forest(4);
    forest.add_edge(0, 1, 3);
    forest.add_edge(2, 3, 1);
    const auto mst = kruskal_mst(forest);
    REQUIRE(mst.edges.size() == 2);
    CHECK(mst.edges[0].weight == 1);
}

TEST_CASE("kruskal matches exhaustive forest enumeration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(rng, {2, 12, 20});
        const auto mst = kruskal_mst(g);
        Weight total = 0;
        for (const auto& edge : mst.edges) total += edge.weight;
        CHECK(total == oracle::exhaustive_mst_weight(g));
        CHECK(std::is_sorted(mst.edges.begin(), mst.edges.end(), canonical_less));

        const auto all = [&] {
            std::vector<LeveledEdge> out;
            for (const auto& edge : g.edges()) out.push_back({edge.u, edge.v, 0});
            return out;
        }();
        const auto cc = oracle::bfs_partition(g.vertex_count(), all, 0, ThresholdMode::inclusive);
        CHECK(mst.edges.size() == g.vertex_count() - cc.region_count);
    }
}

TEST_CASE("kruskal is deterministic with heavy ties") {
    EdgeWeightedGraph g(9, GridShape{3, 3});
    for (VertexId r = 0; r < 3; ++r) {
        for (VertexId col = 0; col < 3; ++col) {
            if (col + 1 < 3) g.add_edge(r * 3 + col, r * 3 + col + 1, 2);
            if (r + 1 < 3) g.add_edge(r * 3 + col, r * 3 + col + 3, 2);
        }
    }
    const auto first = kruskal_mst(g);
    CHECK(kruskal_mst(g).edges == first.edges);
    // all weights tie, so the lowest ids win
    CHECK(first.edges.front().id == 0);
    CHECK(first.edges.size() == 8);
}

TEST_CASE("threshold partitions of the example scale map") {
    ScaleMap map;
    map.vertex_count = 6;
    map.edges = kruskal_mst(fixture::small_graph()).edges;
    map.scales = {1, 1, 1, 8, 10};
    const auto leveled = map.leveled_edges();

    const auto p2 = partition_at_threshold(6, leveled, 2, ThresholdMode::inclusive);
    CHECK(fixture::region_sets(p2) == std::set<std::set<VertexId>>{{a, d, e, f}, {b}, {c}});
    CHECK(partition_at_threshold(6, leveled, 0, ThresholdMode::strict) == Partition::singletons(6));
    CHECK(partition_at_threshold(6, leveled, 10, ThresholdMode::inclusive).region_count == 1);
    CHECK(partition_at_threshold(6, leveled, 10, ThresholdMode::strict).region_count == 2);
}

TEST_CASE("threshold partitions agree with breadth-first search and nest") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng);
        const auto leveled = fixture::by_weight(g.edges());
        std::size_t previous_count = g.vertex_count() + 1;
        Partition previous = Partition::singletons(g.vertex_count());
        for (Scale lambda = 0; lambda <= 32; ++lambda) {
            for (auto mode : {ThresholdMode::strict, ThresholdMode::inclusive}) {
                CHECK(partition_at_threshold(g.vertex_count(), leveled, lambda, mode) ==
                      oracle::bfs_partition(g.vertex_count(), leveled, lambda, mode));
            }
            const auto p = partition_at_threshold(g.vertex_count(), leveled, lambda, ThresholdMode::inclusive);
            CHECK(p.region_count <= previous_count);
            CHECK(refines(previous, p));
            previous_count = p.region_count;
            previous = p;
        }
    }
}

TEST_CASE("partition canonical form") {
    const std::vector<std::uint32_t> keys = {7, 3, 7, 9, 3};
    const auto p = Partition::from_keys(keys);
    CHECK(p.labels == std::vector<std::uint32_t>{0, 1, 0, 2, 1});
    CHECK(p.region_count == 3);
    CHECK(p.region_sizes() == std::vector<std::size_t>{2, 2, 1});
    CHECK(p.regions()[1] == std::vector<VertexId>{1, 4});

    const auto coarse = Partition::from_keys(std::vector<std::uint32_t>{0, 0, 0, 1, 0});
    CHECK(refines(p, coarse));
    CHECK_FALSE(refines(coarse, p));
}

TEST_CASE("union-find agrees with reachability over the union history") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50;
        UnionFind sets(n);
        std::vector<LeveledEdge> history;
        for (int step = 0; step < 40; ++step) {
            const auto x = VertexId(oracle::uniform(rng, 0, n - 1));
            const auto y = VertexId(oracle::uniform(rng, 0, n - 1));
            const bool was_same = sets.same(x, y);
            const auto before = sets.set_count();
            const auto root = sets.unite(x, y);
            CHECK(root == sets.find(x));
            CHECK(sets.set_count() == (was_same ? before : before - 1));
            history.push_back({x, y, 0});
        }
        const auto truth = oracle::bfs_partition(n, history, 0, ThresholdMode::inclusive);
        CHECK(Partition::from_union_find(sets) == truth);
        const auto sizes = truth.region_sizes();
        for (VertexId v = 0; v < n; ++v) CHECK(sets.size_of(v) == sizes[truth.labels[v]]);
        CHECK(sets.element_count() == n);
    }
}
