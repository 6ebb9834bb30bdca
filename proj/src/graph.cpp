#include "hgseg/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "hgseg/error.hpp"

namespace hgseg {

namespace {

std::uint64_t pair_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t(u) << 32) | v;
}

}  // namespace

EdgeWeightedGraph::EdgeWeightedGraph(std::size_t vertex_count, std::optional<GridShape> grid)
    : vertex_count_(vertex_count), grid_(grid) {
    if (grid && grid->pixel_count() != vertex_count) {
        throw InvalidInput("grid shape does not match vertex count");
    }
}

EdgeWeightedGraph::EdgeWeightedGraph(std::size_t vertex_count, std::vector<WeightedEdge> edges,
                                     std::optional<GridShape> grid)
    : EdgeWeightedGraph(vertex_count, grid) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto& e = edges[i];
        check_edge(e.u, e.v, e.weight);
        if (!seen.insert(pair_key(e.u, e.v)).second) {
            throw InvalidInput("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
        e.id = static_cast<EdgeId>(i);
    }
    edges_ = std::move(edges);
}

void EdgeWeightedGraph::check_edge(VertexId u, VertexId v, Weight weight) const {
    if (u >= vertex_count_ || v >= vertex_count_) throw InvalidInput("edge endpoint out of range");
    if (u == v) throw InvalidInput("self-loop on vertex " + std::to_string(u));
    if (weight < 0) throw InvalidInput("negative edge weight");
}

EdgeId EdgeWeightedGraph::add_edge(VertexId u, VertexId v, Weight weight) {
    check_edge(u, v, weight);
    const auto key = pair_key(u, v);
    // Linear duplicate scan keeps add_edge allocation-free; bulk construction
    // goes through the vector constructor.
    for (const auto& e : edges_) {
        if (pair_key(e.u, e.v) == key) {
            throw InvalidInput("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        }
    }
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v, weight, id});
    return id;
}

Weight EdgeWeightedGraph::max_weight() const {
    Weight m = 0;
    for (const auto& e : edges_) m = std::max(m, e.weight);
    return m;
}

// --- Kruskal ---------------------------------------------------------------

Mst kruskal_mst(const EdgeWeightedGraph& graph) {
    const auto edges = graph.edges();
    std::vector<WeightedEdge> order(edges.begin(), edges.end());

    // Image gradients are small integers: bucket them. Edges are stored by id,
    // so a stable counting sort yields (weight, id) order directly.
    const Weight max_w = graph.max_weight();
    if (max_w <= Weight(1) << 16) {
        std::vector<std::size_t> start(static_cast<std::size_t>(max_w) + 2, 0);
        for (const auto& e : edges) ++start[static_cast<std::size_t>(e.weight) + 1];
        std::partial_sum(start.begin(), start.end(), start.begin());
        for (const auto& e : edges) order[start[static_cast<std::size_t>(e.weight)]++] = e;
    } else {
        std::sort(order.begin(), order.end(), canonical_less);
    }

    Mst mst;
    mst.vertex_count = graph.vertex_count();
    if (graph.vertex_count() > 0) mst.edges.reserve(graph.vertex_count() - 1);
    UnionFind sets(graph.vertex_count());
    for (const auto& e : order) {
        if (sets.find(e.u) != sets.find(e.v)) {
            sets.unite(e.u, e.v);
            mst.edges.push_back(e);
            if (sets.set_count() == 1) break;
        }
    }
    return mst;
}

// --- UnionFind -------------------------------------------------------------

UnionFind::UnionFind(std::size_t count)
    : parent_(count), rank_(count, 0), size_(count, 1), sets_(count) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
}

VertexId UnionFind::find(VertexId x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

VertexId UnionFind::unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    if (rank_[a] == rank_[b]) ++rank_[a];
    --sets_;
    return a;
}

// --- Partition -------------------------------------------------------------

Partition Partition::from_keys(std::span<const std::uint32_t> keys) {
    Partition p;
    p.labels.resize(keys.size());
    std::vector<std::uint32_t> relabel(keys.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto k = keys[i];
        if (k >= relabel.size()) relabel.resize(std::size_t(k) + 1, UINT32_MAX);
        if (relabel[k] == UINT32_MAX) relabel[k] = next++;
        p.labels[i] = relabel[k];
    }
    p.region_count = next;
    return p;
}

Partition Partition::from_union_find(UnionFind& sets) {
    std::vector<std::uint32_t> roots(sets.element_count());
    for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = sets.find(static_cast<VertexId>(i));
    return from_keys(roots);
}

Partition Partition::singletons(std::size_t vertex_count) {
    Partition p;
    p.labels.resize(vertex_count);
    std::iota(p.labels.begin(), p.labels.end(), 0u);
    p.region_count = vertex_count;
    return p;
}

std::vector<std::size_t> Partition::region_sizes() const {
    std::vector<std::size_t> sizes(region_count, 0);
    for (auto l : labels) ++sizes[l];
    return sizes;
}

std::vector<std::vector<VertexId>> Partition::regions() const {
    std::vector<std::vector<VertexId>> out(region_count);
    for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(static_cast<VertexId>(i));
    return out;
}

bool refines(const Partition& finer, const Partition& coarser) {
    if (finer.vertex_count() != coarser.vertex_count()) return false;
    std::vector<std::uint32_t> image(finer.region_count, UINT32_MAX);
    for (std::size_t i = 0; i < finer.labels.size(); ++i) {
        auto& target = image[finer.labels[i]];
        if (target == UINT32_MAX) {
            target = coarser.labels[i];
        } else if (target != coarser.labels[i]) {
            return false;
        }
    }
    return true;
}

Partition partition_at_threshold(std::size_t vertex_count, std::span<const LeveledEdge> edges,
                                 Scale lambda, ThresholdMode mode) {
    UnionFind sets(vertex_count);
    for (const auto& e : edges) {
        const bool admitted = mode == ThresholdMode::strict ? e.value < lambda : e.value <= lambda;
        if (admitted) sets.unite(e.u, e.v);
    }
    return Partition::from_union_find(sets);
}

}  // namespace hgseg
