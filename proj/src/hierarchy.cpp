#include "hgseg/hierarchy.hpp"

#include <algorithm>
#include <numeric>

#include "hgseg/error.hpp"

namespace hgseg {

// --- ScaleMap --------------------------------------------------------------

std::vector<LeveledEdge> ScaleMap::leveled_edges() const {
    std::vector<LeveledEdge> out(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) out[i] = {edges[i].u, edges[i].v, scales[i]};
    return out;
}

Scale ScaleMap::max_scale() const {
    Scale m = 0;
    for (auto s : scales) {
        if (s != kInfiniteScale) m = std::max(m, s);
    }
    return m;
}

std::vector<Scale> ScaleMap::distinct_scales() const {
    std::vector<Scale> out;
    out.reserve(scales.size());
    for (auto s : scales) {
        if (s != kInfiniteScale) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- HierarchyBuilder ------------------------------------------------------

HierarchyBuilder::HierarchyBuilder(std::size_t vertex_count)
    : parent_(vertex_count, kNone), level_(vertex_count, 0), size_(vertex_count, 1),
      internal_(vertex_count, 0) {
    const std::size_t capacity = vertex_count > 0 ? 2 * vertex_count - 1 : 0;
    parent_.reserve(capacity);
    level_.reserve(capacity);
    size_.reserve(capacity);
    internal_.reserve(capacity);
}

void HierarchyBuilder::collect_chain(VertexId vertex, std::vector<std::uint32_t>& out) const {
    out.clear();
    for (std::uint32_t node = vertex; node != kNone; node = parent_[node]) out.push_back(node);
}

// Walks the chain top-down. The first node whose level interval is non-empty
// and violated (S > level) holds the largest violating v'.
Scale HierarchyBuilder::one_sided(const std::vector<std::uint32_t>& chain, Weight diff) const {
    Scale next = kInfiniteScale;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const Scale lvl = level_[*it];
        if (lvl < next) {
            const Scale s = (diff - internal_[*it]) * size_[*it];
            if (s > lvl) return std::min(s, next);
            next = lvl;
        }
    }
    return 1;
}

OneSidedScales HierarchyBuilder::evaluate(const WeightedEdge& edge) {
    collect_chain(edge.u, scratch_x_);
    collect_chain(edge.v, scratch_y_);
    if (scratch_x_.back() == scratch_y_.back()) {
        throw InvalidInput("edge endpoints already share a region");
    }
    return {one_sided(scratch_x_, edge.weight), one_sided(scratch_y_, edge.weight)};
}

void HierarchyBuilder::assign(const WeightedEdge& edge, Scale scale) {
    collect_chain(edge.u, scratch_x_);
    collect_chain(edge.v, scratch_y_);
    if (scratch_x_.back() == scratch_y_.back()) {
        throw InvalidInput("edge endpoints already share a region");
    }

    // Topmost node of each chain still at or below the new scale.
    auto split = [&](const std::vector<std::uint32_t>& chain) {
        std::size_t i = 0;
        while (i + 1 < chain.size() && level_[chain[i + 1]] <= scale) ++i;
        return i;
    };
    const std::size_t ia = split(scratch_x_), ib = split(scratch_y_);
    const std::uint32_t a = scratch_x_[ia], b = scratch_y_[ib];

    const auto joined = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(kNone);
    level_.push_back(scale);
    size_.push_back(size_[a] + size_[b]);
    internal_.push_back(std::max({internal_[a], internal_[b], edge.weight}));
    parent_[a] = joined;
    parent_[b] = joined;

    // Zip the remaining ancestors by level. Each one grows by the other
    // side's region at its level.
    RegionStats side_a{size_[a], internal_[a]}, side_b{size_[b], internal_[b]};
    std::size_t i = ia + 1, j = ib + 1;
    std::uint32_t prev = joined;
    while (i < scratch_x_.size() || j < scratch_y_.size()) {
        const bool take_a = j == scratch_y_.size() ||
                            (i < scratch_x_.size() && level_[scratch_x_[i]] <= level_[scratch_y_[j]]);
        const std::uint32_t node = take_a ? scratch_x_[i++] : scratch_y_[j++];
        RegionStats& own = take_a ? side_a : side_b;
        const RegionStats& other = take_a ? side_b : side_a;
        own = {size_[node], internal_[node]};
        size_[node] = own.size + other.size;
        internal_[node] = std::max({own.internal_difference, other.internal_difference, edge.weight});
        parent_[prev] = node;
        prev = node;
    }
    parent_[prev] = kNone;
}

std::vector<SubRegionStep> HierarchyBuilder::chain(VertexId vertex) const {
    std::vector<std::uint32_t> nodes;
    collect_chain(vertex, nodes);
    std::vector<SubRegionStep> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        // a node sharing its parent's level is never a threshold component
        if (i + 1 < nodes.size() && level_[nodes[i + 1]] == level_[nodes[i]]) continue;
        out.push_back({level_[nodes[i]], {size_[nodes[i]], internal_[nodes[i]]}});
    }
    return out;
}

ScaleMap compute_hierarchy(const Mst& mst) {
    ScaleMap map;
    map.vertex_count = mst.vertex_count;
    map.edges = mst.edges;
    map.scales.reserve(mst.edges.size());
    HierarchyBuilder builder(mst.vertex_count);
    for (const auto& e : mst.edges) map.scales.push_back(builder.process(e));
    return map;
}

ScaleMap compute_hierarchy(const EdgeWeightedGraph& graph, const Mst& mst) {
    if (graph.vertex_count() != mst.vertex_count) {
        throw InvalidInput("spanning tree does not belong to the graph");
    }
    return compute_hierarchy(mst);
}

// --- Reference sub-region lookup --------------------------------------------

std::vector<SubRegionStep> sub_region_chain(const ScaleMap& partial, VertexId query) {
    if (query >= partial.vertex_count) throw InvalidInput("query vertex out of range");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < partial.scales.size(); ++i) {
        if (partial.scales[i] != kInfiniteScale) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return partial.scales[a] < partial.scales[b];
    });

    UnionFind sets(partial.vertex_count);
    std::vector<Weight> internal(partial.vertex_count, 0);
    std::vector<SubRegionStep> chain{{0, {1, 0}}};
    for (std::size_t k = 0; k < order.size();) {
        const Scale level = partial.scales[order[k]];
        const std::size_t before = sets.size_of(query);
        for (; k < order.size() && partial.scales[order[k]] == level; ++k) {
            const auto& e = partial.edges[order[k]];
            const VertexId a = sets.find(e.u), b = sets.find(e.v);
            const Weight merged = std::max({internal[a], internal[b], e.weight});
            internal[sets.unite(a, b)] = merged;
        }
        const VertexId root = sets.find(query);
        if (sets.size_of(root) != before) {
            const SubRegionStep step{level, {static_cast<std::int64_t>(sets.size_of(root)), internal[root]}};
            if (chain.back().level == level) {
                chain.back() = step;
            } else {
                chain.push_back(step);
            }
        }
    }
    return chain;
}

Scale hierarchical_scale(std::span<const SubRegionStep> chain, Weight link_weight) {
    Scale largest_violation = -1;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Scale lo = chain[i].level;
        const Scale hi = i + 1 < chain.size() ? chain[i + 1].level - 1 : kInfiniteScale;
        if (lo > hi) continue;
        const Scale s = (link_weight - chain[i].region.internal_difference) * chain[i].region.size;
        if (s > lo) largest_violation = std::max(largest_violation, std::min(s - 1, hi));
    }
    return std::max<Scale>(1, largest_violation + 1);
}

Scale hierarchical_scale(const ScaleMap& partial, VertexId query, Weight link_weight) {
    const auto chain = sub_region_chain(partial, query);
    return hierarchical_scale(chain, link_weight);
}

// --- Cuts ------------------------------------------------------------------

Partition cut(const ScaleMap& scale_map, Scale lambda) {
    const auto edges = scale_map.leveled_edges();
    return partition_at_threshold(scale_map.vertex_count, edges, lambda, ThresholdMode::inclusive);
}

LevelCut cut_to_region_count(const ScaleMap& scale_map, std::size_t regions) {
    if (regions < 1 || regions > scale_map.vertex_count) {
        throw InvalidInput("region count must lie in [1, vertex count]");
    }
    std::vector<Scale> sorted;
    for (auto s : scale_map.scales) {
        if (s != kInfiniteScale) sorted.push_back(s);
    }
    std::sort(sorted.begin(), sorted.end());

    // cut(lambda) has vertex_count - #{scale <= lambda} regions.
    const std::size_t needed = scale_map.vertex_count - regions;
    Scale lambda = 0;
    if (needed > 0) lambda = sorted.empty() ? 0 : sorted[std::min(needed, sorted.size()) - 1];
    return {lambda, cut(scale_map, lambda)};
}

}  // namespace hgseg
