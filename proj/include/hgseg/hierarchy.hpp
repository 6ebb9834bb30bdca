#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hgseg/fh.hpp"
#include "hgseg/graph.hpp"

namespace hgseg {

/// Hierarchical observation scale of every MST edge.
///
/// `edges` keeps the canonical MST order and `scales[i]` belongs to
/// `edges[i]`. A partially computed map holds kInfiniteScale for edges not
/// processed yet. Thresholding the scales (inclusive) yields the hierarchy.
struct ScaleMap {
    std::size_t vertex_count = 0;
    std::vector<WeightedEdge> edges;
    std::vector<Scale> scales;

    std::vector<LeveledEdge> leveled_edges() const;
    /// Largest finite scale, 0 when there is none.
    Scale max_scale() const;
    /// Sorted distinct finite scales.
    std::vector<Scale> distinct_scales() const;
};

/// The region of a query vertex over a range of levels: X*(v) = `region` for
/// v in [level, level of the next step).
struct SubRegionStep {
    Scale level = 0;
    RegionStats region;
};

struct OneSidedScales {
    Scale x_side = 0;  // scale of the region of edge.u relative to that of edge.v
    Scale y_side = 0;
    Scale combined() const { return x_side > y_side ? x_side : y_side; }
};

/// Incremental hierarchy over MST edges.
///
/// Keeps the dendrogram of the finite scales assigned so far as parent links
/// between binary nodes. Assigning a scale to an edge zips the two ancestor
/// chains of its endpoints above that scale, so the chain of any vertex always
/// lists its sub-regions X*(v) bottom-up.
class HierarchyBuilder {
public:
    explicit HierarchyBuilder(std::size_t vertex_count);

    /// Both one-sided hierarchical scales for an edge joining two distinct
    /// current components, with diff = edge.weight.
    OneSidedScales evaluate(const WeightedEdge& edge);

    /// Records `scale` for the edge and joins the two components.
    void assign(const WeightedEdge& edge, Scale scale);

    Scale process(const WeightedEdge& edge) {
        const Scale s = evaluate(edge).combined();
        assign(edge, s);
        return s;
    }

    /// Current chain of sub-regions of a vertex, bottom-up.
    std::vector<SubRegionStep> chain(VertexId vertex) const;

private:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    void collect_chain(VertexId vertex, std::vector<std::uint32_t>& out) const;
    Scale one_sided(const std::vector<std::uint32_t>& chain, Weight diff) const;

    std::vector<std::uint32_t> parent_;
    std::vector<Scale> level_;
    std::vector<std::int64_t> size_;
    std::vector<Weight> internal_;
    std::vector<std::uint32_t> scratch_x_, scratch_y_;
};

/// Scale map of the hierarchy: each MST edge, in canonical order, gets the
/// max of its two one-sided hierarchical scales, computed against the scales
/// of the edges processed before it.
ScaleMap compute_hierarchy(const Mst& mst);
ScaleMap compute_hierarchy(const EdgeWeightedGraph& graph, const Mst& mst);

/// Sub-region chain of `query` rebuilt from scratch out of the finite scales
/// of a partial map (inclusive thresholds). Int counts original weights.
std::vector<SubRegionStep> sub_region_chain(const ScaleMap& partial, VertexId query);

/// Smallest v >= 1 such that S(X*(v')) <= v' for every v' >= v, where
/// S(X*) = (link_weight - Int(X*)) * |X*|.
Scale hierarchical_scale(std::span<const SubRegionStep> chain, Weight link_weight);
Scale hierarchical_scale(const ScaleMap& partial, VertexId query, Weight link_weight);

/// Partition of the hierarchy at level lambda (scales <= lambda merged).
Partition cut(const ScaleMap& scale_map, Scale lambda);

struct LevelCut {
    Scale lambda = 0;
    Partition partition;
};

/// Smallest lambda whose cut has at most `regions` regions. The achieved
/// count may be lower when several edges share a scale, or higher when the
/// graph has more components than requested.
LevelCut cut_to_region_count(const ScaleMap& scale_map, std::size_t regions);

}  // namespace hgseg
