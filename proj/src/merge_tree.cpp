#include "hgseg/merge_tree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hgseg/error.hpp"

namespace hgseg {

MergeTree merge_tree(const ScaleMap& scale_map) {
    const std::size_t n = scale_map.vertex_count;
    std::vector<std::size_t> order(scale_map.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (auto s : scale_map.scales) {
        if (s == kInfiniteScale) throw InvalidInput("merge tree needs a fully computed scale map");
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scale_map.scales[a] < scale_map.scales[b];
    });

    MergeTree tree;
    tree.vertex_count_ = n;
    tree.nodes_.resize(n);
    UnionFind sets(n);
    // tree node currently representing each union-find root
    std::vector<std::uint32_t> node_of(n);
    std::iota(node_of.begin(), node_of.end(), 0u);

    for (auto idx : order) {
        const auto& e = scale_map.edges[idx];
        const Scale s = scale_map.scales[idx];
        const VertexId ra = sets.find(e.u), rb = sets.find(e.v);
        if (ra == rb) throw InvalidInput("scale map edges contain a cycle");
        std::uint32_t na = node_of[ra], nb = node_of[rb];

        // Reuse a node created at this same scale instead of stacking a new one.
        const bool a_open = na >= n && tree.nodes_[na].scale == s;
        const bool b_open = nb >= n && tree.nodes_[nb].scale == s;
        std::uint32_t target;
        if (a_open && b_open) {
            if (na > nb) std::swap(na, nb);
            target = na;
            auto& absorbed = tree.nodes_[nb];
            for (auto c : absorbed.children) tree.nodes_[c].parent = target;
            auto& kids = tree.nodes_[target].children;
            kids.insert(kids.end(), absorbed.children.begin(), absorbed.children.end());
            tree.nodes_[target].size += absorbed.size;
            tree.nodes_[target].internal_difference =
                std::max(tree.nodes_[target].internal_difference, absorbed.internal_difference);
            absorbed.children.clear();
            absorbed.size = 0;  // tombstone, compacted below
        } else if (a_open || b_open) {
            target = a_open ? na : nb;
            const std::uint32_t other = a_open ? nb : na;
            tree.nodes_[other].parent = target;
            tree.nodes_[target].children.push_back(other);
            tree.nodes_[target].size += tree.nodes_[other].size;
            tree.nodes_[target].internal_difference =
                std::max(tree.nodes_[target].internal_difference, tree.nodes_[other].internal_difference);
        } else {
            target = static_cast<std::uint32_t>(tree.nodes_.size());
            MergeNode fresh;
            fresh.scale = s;
            fresh.size = tree.nodes_[na].size + tree.nodes_[nb].size;
            fresh.internal_difference =
                std::max(tree.nodes_[na].internal_difference, tree.nodes_[nb].internal_difference);
            fresh.children = {na, nb};
            tree.nodes_.push_back(std::move(fresh));
            tree.nodes_[na].parent = target;
            tree.nodes_[nb].parent = target;
        }
        tree.nodes_[target].internal_difference =
            std::max(tree.nodes_[target].internal_difference, e.weight);
        node_of[sets.unite(ra, rb)] = target;
    }

    // Drop tombstones and renumber internal nodes in creation order.
    std::vector<std::uint32_t> remap(tree.nodes_.size(), MergeNode::kNoParent);
    std::vector<MergeNode> compact;
    compact.reserve(tree.nodes_.size());
    for (std::uint32_t i = 0; i < tree.nodes_.size(); ++i) {
        if (i >= n && tree.nodes_[i].size == 0) continue;
        remap[i] = static_cast<std::uint32_t>(compact.size());
        compact.push_back(std::move(tree.nodes_[i]));
    }
    for (auto& node : compact) {
        if (node.parent != MergeNode::kNoParent) node.parent = remap[node.parent];
        for (auto& c : node.children) c = remap[c];
        std::sort(node.children.begin(), node.children.end());
    }
    tree.nodes_ = std::move(compact);

    // Parents always have larger ids than children.
    tree.depth_.assign(tree.nodes_.size(), 0);
    for (std::size_t i = tree.nodes_.size(); i-- > 0;) {
        const auto p = tree.nodes_[i].parent;
        if (p != MergeNode::kNoParent) tree.depth_[i] = tree.depth_[p] + 1;
    }
    return tree;
}

std::vector<std::uint32_t> MergeTree::roots() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].parent == MergeNode::kNoParent) out.push_back(i);
    }
    return out;
}

Scale MergeTree::merge_scale(VertexId p, VertexId q) const {
    if (p >= vertex_count_ || q >= vertex_count_) throw InvalidInput("vertex out of range");
    std::uint32_t a = p, b = q;
    while (a != b) {
        if (depth_[a] < depth_[b]) std::swap(a, b);
        if (nodes_[a].parent == MergeNode::kNoParent) {
            throw NoPath("vertices " + std::to_string(p) + " and " + std::to_string(q) +
                         " lie in different components");
        }
        a = nodes_[a].parent;
    }
    return nodes_[a].scale;
}

Partition MergeTree::flatten(Scale lambda) const {
    // Highest ancestor with scale <= lambda; ids are topologically ordered.
    std::vector<std::uint32_t> top(nodes_.size());
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        const auto p = nodes_[i].parent;
        top[i] = (p != MergeNode::kNoParent && nodes_[p].scale <= lambda) ? top[p]
                                                                          : static_cast<std::uint32_t>(i);
    }
    return Partition::from_keys(std::span<const std::uint32_t>(top.data(), vertex_count_));
}

std::string MergeTree::to_text() const {
    std::ostringstream out;
    const auto r = roots();
    out << "merge_tree vertices=" << vertex_count_ << " internal_nodes=" << internal_count()
        << " roots=" << r.size() << '\n';
    for (std::size_t i = vertex_count_; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        out << "node id=" << i << " scale=" << node.scale << " size=" << node.size
            << " int=" << node.internal_difference << " children=";
        for (std::size_t c = 0; c < node.children.size(); ++c) {
            out << (c ? "," : "") << node.children[c];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace hgseg
