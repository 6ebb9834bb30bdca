#pragma once

#include <optional>
#include <vector>

#include "hgseg/graph.hpp"
#include "hgseg/hierarchy.hpp"
#include "hgseg/image_io.hpp"
#include "hgseg/merge_tree.hpp"

namespace hgseg {

/// Per graph edge: smallest lambda at which its endpoints share a region of
/// cut(lambda). Edges keep the graph's order.
struct SaliencyMap {
    std::vector<LeveledEdge> edges;
    std::optional<GridShape> grid;

    /// Edges whose value exceeds lambda are exactly the boundaries of cut(lambda).
    std::vector<std::size_t> boundary_edges(Scale lambda) const;
};

/// Maximum scale along the spanning-tree path between p and q.
Scale ultrametric(const ScaleMap& scale_map, VertexId p, VertexId q);

/// Lowest-common-ancestor scales for all graph edges in one traversal.
SaliencyMap saliency_map(const ScaleMap& scale_map, const EdgeWeightedGraph& graph);
SaliencyMap saliency_map(const MergeTree& tree, const EdgeWeightedGraph& graph);

enum class Normalization { linear, log };

/// Doubled-grid contour image of size (2h-1) x (2w-1). Pixel cells are 0,
/// cells between two pixels carry the normalized saliency of their edge and
/// crossing cells the max of their four neighbouring edge cells. Uses 16 bits
/// when the largest saliency exceeds 255.
GrayImage render_contours(const SaliencyMap& saliency, GridShape grid, Normalization norm,
                          bool invert = false);

}  // namespace hgseg
