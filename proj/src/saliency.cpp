#include "hgseg/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "hgseg/error.hpp"

namespace hgseg {

std::vector<std::size_t> SaliencyMap::boundary_edges(Scale lambda) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].value > lambda) out.push_back(i);
    }
    return out;
}

Scale ultrametric(const ScaleMap& scale_map, VertexId p, VertexId q) {
    const std::size_t n = scale_map.vertex_count;
    if (p >= n || q >= n) throw InvalidInput("vertex out of range");
    std::vector<std::vector<std::pair<VertexId, Scale>>> adjacency(n);
    for (std::size_t i = 0; i < scale_map.edges.size(); ++i) {
        const auto& e = scale_map.edges[i];
        adjacency[e.u].push_back({e.v, scale_map.scales[i]});
        adjacency[e.v].push_back({e.u, scale_map.scales[i]});
    }
    std::vector<Scale> path_max(n, -1);
    std::queue<VertexId> frontier;
    path_max[p] = 0;
    frontier.push(p);
    while (!frontier.empty()) {
        const VertexId x = frontier.front();
        frontier.pop();
        if (x == q) return path_max[x];
        for (auto [y, s] : adjacency[x]) {
            if (path_max[y] < 0) {
                path_max[y] = std::max(path_max[x], s);
                frontier.push(y);
            }
        }
    }
    throw NoPath("vertices " + std::to_string(p) + " and " + std::to_string(q) +
                 " lie in different components");
}

SaliencyMap saliency_map(const ScaleMap& scale_map, const EdgeWeightedGraph& graph) {
    return saliency_map(merge_tree(scale_map), graph);
}

// Tarjan's offline lowest common ancestors over the merge tree.
SaliencyMap saliency_map(const MergeTree& tree, const EdgeWeightedGraph& graph) {
    if (tree.vertex_count() != graph.vertex_count()) {
        throw InvalidInput("merge tree does not belong to the graph");
    }
    const auto edges = graph.edges();
    const auto& nodes = tree.nodes();

    // queries[v] lists (other endpoint, edge index)
    std::vector<std::vector<std::pair<VertexId, std::size_t>>> queries(graph.vertex_count());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        queries[edges[i].u].push_back({edges[i].v, i});
        queries[edges[i].v].push_back({edges[i].u, i});
    }

    SaliencyMap out;
    out.grid = graph.grid();
    out.edges.resize(edges.size());
    std::vector<bool> answered(edges.size(), false);

    UnionFind sets(nodes.size());
    std::vector<std::uint32_t> ancestor(nodes.size());
    std::vector<bool> done(nodes.size(), false);
    struct Frame {
        std::uint32_t node;
        std::size_t next_child;
    };
    std::vector<Frame> stack;

    for (auto root : tree.roots()) {
        stack.push_back({root, 0});
        ancestor[root] = root;
        while (!stack.empty()) {
            auto& frame = stack.back();
            const auto& node = nodes[frame.node];
            if (frame.next_child < node.children.size()) {
                const auto child = node.children[frame.next_child++];
                ancestor[child] = child;
                stack.push_back({child, 0});
                continue;
            }
            const std::uint32_t u = frame.node;
            done[u] = true;
            if (u < tree.vertex_count()) {
                for (auto [other, idx] : queries[u]) {
                    if (done[other] && !answered[idx]) {
                        const auto lca = ancestor[sets.find(other)];
                        out.edges[idx] = {edges[idx].u, edges[idx].v, nodes[lca].scale};
                        answered[idx] = true;
                    }
                }
            }
            stack.pop_back();
            if (!stack.empty()) {
                const std::uint32_t parent = stack.back().node;
                ancestor[sets.unite(parent, u)] = parent;
            }
        }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!answered[i]) {
            throw NoPath("graph edge " + std::to_string(i) + " spans two hierarchy components");
        }
    }
    return out;
}

GrayImage render_contours(const SaliencyMap& saliency, GridShape grid, Normalization norm,
                          bool invert) {
    if (grid.width == 0 || grid.height == 0) throw InvalidInput("empty grid");
    if (saliency.grid && *saliency.grid != grid) throw UnsupportedTopology("grid shape mismatch");

    Scale max_value = 0;
    for (const auto& e : saliency.edges) max_value = std::max(max_value, e.value);

    GrayImage img;
    img.width = 2 * grid.width - 1;
    img.height = 2 * grid.height - 1;
    img.bit_depth = max_value > 255 ? 16 : 8;
    img.samples.assign(img.width * img.height, 0);
    const std::int64_t full = img.bit_depth == 16 ? 65535 : 255;

    auto normalize = [&](Scale v) -> std::uint16_t {
        if (max_value <= 0) return 0;
        if (norm == Normalization::linear) {
            // round-half-up of v * full / max
            return static_cast<std::uint16_t>((2 * v * full + max_value) / (2 * max_value));
        }
        const double ratio = std::log1p(double(v)) / std::log1p(double(max_value));
        return static_cast<std::uint16_t>(std::floor(ratio * double(full) + 0.5));
    };

    for (const auto& e : saliency.edges) {
        const VertexId lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
        const std::size_t r = lo / grid.width, c = lo % grid.width;
        std::size_t cell_r, cell_c;
        if (hi == lo + 1 && c + 1 < grid.width) {
            cell_r = 2 * r;
            cell_c = 2 * c + 1;
        } else if (hi == lo + grid.width && r + 1 < grid.height) {
            cell_r = 2 * r + 1;
            cell_c = 2 * c;
        } else {
            throw UnsupportedTopology("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                      " is not a 4-adjacency grid edge");
        }
        img.at(cell_r, cell_c) = normalize(e.value);
    }

    for (std::size_t r = 1; r < img.height; r += 2) {
        for (std::size_t c = 1; c < img.width; c += 2) {
            img.at(r, c) = std::max({img.at(r - 1, c), img.at(r + 1, c), img.at(r, c - 1),
                                     img.at(r, c + 1)});
        }
    }
    if (invert) {
        for (auto& s : img.samples) s = static_cast<std::uint16_t>(full - s);
    }
    return img;
}

}  // namespace hgseg
