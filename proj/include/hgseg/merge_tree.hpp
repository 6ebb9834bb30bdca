#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgseg/hierarchy.hpp"

namespace hgseg {

struct MergeNode {
    static constexpr std::uint32_t kNoParent = UINT32_MAX;

    Scale scale = 0;  // 0 for leaves
    std::int64_t size = 1;
    Weight internal_difference = 0;
    std::uint32_t parent = kNoParent;
    std::vector<std::uint32_t> children;
};

/// Dendrogram of a scale map. Nodes [0, vertex_count) are the leaves; each
/// internal node is one region of some cut, created at the smallest scale
/// where it exists. Unions at the same scale collapse into a single node, so
/// internal nodes are n-ary and scales strictly increase towards the roots.
class MergeTree {
public:
    MergeTree() = default;

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<MergeNode>& nodes() const { return nodes_; }
    const MergeNode& node(std::uint32_t id) const { return nodes_[id]; }
    std::vector<std::uint32_t> roots() const;
    std::size_t internal_count() const { return nodes_.size() - vertex_count_; }

    /// Scale of the lowest common ancestor of two vertices, i.e. the smallest
    /// lambda at which they share a region. Throws NoPath across trees.
    Scale merge_scale(VertexId p, VertexId q) const;

    /// Regions of the tree at level lambda; equals cut(scale_map, lambda).
    Partition flatten(Scale lambda) const;

    /// Text document: a header line then one "node" record per internal node.
    std::string to_text() const;

private:
    friend MergeTree merge_tree(const ScaleMap& scale_map);

    std::size_t vertex_count_ = 0;
    std::vector<MergeNode> nodes_;
    std::vector<std::uint32_t> depth_;
};

MergeTree merge_tree(const ScaleMap& scale_map);

}  // namespace hgseg
