#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace hgseg {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::int64_t;
using Scale = std::int64_t;

/// Marks an edge whose hierarchical scale has not been assigned yet.
inline constexpr Scale kInfiniteScale = std::numeric_limits<Scale>::max();

struct WeightedEdge {
    VertexId u = 0;
    VertexId v = 0;
    Weight weight = 0;
    EdgeId id = 0;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Canonical processing order: non-decreasing weight, ties by edge id.
inline bool canonical_less(const WeightedEdge& a, const WeightedEdge& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.id < b.id;
}

struct GridShape {
    std::size_t width = 0;
    std::size_t height = 0;

    std::size_t pixel_count() const { return width * height; }
    VertexId vertex(std::size_t row, std::size_t col) const {
        return static_cast<VertexId>(row * width + col);
    }
    friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Undirected graph with non-negative integer edge weights.
///
/// Edge ids are insertion indices. Self-loops, duplicate vertex pairs,
/// out-of-range endpoints and negative weights are rejected with
/// InvalidInput.
class EdgeWeightedGraph {
public:
    EdgeWeightedGraph() = default;
    explicit EdgeWeightedGraph(std::size_t vertex_count, std::optional<GridShape> grid = {});

    /// Validates the whole edge list at once; ids are reassigned to positions.
    EdgeWeightedGraph(std::size_t vertex_count, std::vector<WeightedEdge> edges,
                      std::optional<GridShape> grid = {});

    EdgeId add_edge(VertexId u, VertexId v, Weight weight);

    std::size_t vertex_count() const { return vertex_count_; }
    std::span<const WeightedEdge> edges() const { return edges_; }
    const std::optional<GridShape>& grid() const { return grid_; }
    Weight max_weight() const;

private:
    void check_edge(VertexId u, VertexId v, Weight weight) const;

    std::size_t vertex_count_ = 0;
    std::vector<WeightedEdge> edges_;
    std::optional<GridShape> grid_;
};

/// Minimum spanning forest, edges stored in canonical order.
struct Mst {
    std::size_t vertex_count = 0;
    std::vector<WeightedEdge> edges;
};

Mst kruskal_mst(const EdgeWeightedGraph& graph);

/// Disjoint sets with union by rank, path halving and per-root sizes.
class UnionFind {
public:
    explicit UnionFind(std::size_t count);

    VertexId find(VertexId x);
    /// Returns the surviving root.
    VertexId unite(VertexId a, VertexId b);
    bool same(VertexId a, VertexId b) { return find(a) == find(b); }
    std::size_t size_of(VertexId x) { return size_[find(x)]; }
    std::size_t set_count() const { return sets_; }
    std::size_t element_count() const { return parent_.size(); }

private:
    std::vector<VertexId> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<std::uint32_t> size_;
    std::size_t sets_;
};

/// Vertex labelling. Labels are dense and ordered by the smallest vertex of
/// each region, so two partitions of the same vertex set are equal iff
/// their label vectors are equal.
struct Partition {
    std::vector<std::uint32_t> labels;
    std::size_t region_count = 0;

    std::size_t vertex_count() const { return labels.size(); }
    std::vector<std::size_t> region_sizes() const;
    /// Vertices of each region, ascending.
    std::vector<std::vector<VertexId>> regions() const;

    /// Relabels any per-vertex region key into canonical form.
    static Partition from_keys(std::span<const std::uint32_t> keys);
    static Partition from_union_find(UnionFind& sets);
    static Partition singletons(std::size_t vertex_count);

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// True when every region of `finer` lies inside a single region of `coarser`.
bool refines(const Partition& finer, const Partition& coarser);

enum class ThresholdMode { strict, inclusive };

/// An edge carrying an arbitrary level (original weight or hierarchical scale).
struct LeveledEdge {
    VertexId u = 0;
    VertexId v = 0;
    Scale value = 0;
};

/// Connected components of the edges whose value is < lambda (strict) or
/// <= lambda (inclusive).
Partition partition_at_threshold(std::size_t vertex_count, std::span<const LeveledEdge> edges,
                                 Scale lambda, ThresholdMode mode);

}  // namespace hgseg
