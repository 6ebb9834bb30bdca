#include "hgseg/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "hgseg/error.hpp"

namespace hgseg::oracle {

Partition bfs_partition(std::size_t vertex_count, std::span<const LeveledEdge> edges, Scale lambda,
                        ThresholdMode mode) {
    std::vector<std::vector<VertexId>> adjacency(vertex_count);
    for (const auto& e : edges) {
        const bool admitted = mode == ThresholdMode::strict ? e.value < lambda : e.value <= lambda;
        if (!admitted) continue;
        adjacency[e.u].push_back(e.v);
        adjacency[e.v].push_back(e.u);
    }
    Partition p;
    p.labels.assign(vertex_count, UINT32_MAX);
    std::deque<VertexId> queue;
    for (VertexId start = 0; start < vertex_count; ++start) {
        if (p.labels[start] != UINT32_MAX) continue;
        const auto label = static_cast<std::uint32_t>(p.region_count++);
        p.labels[start] = label;
        queue.push_back(start);
        while (!queue.empty()) {
            const VertexId x = queue.front();
            queue.pop_front();
            for (VertexId y : adjacency[x]) {
                if (p.labels[y] == UINT32_MAX) {
                    p.labels[y] = label;
                    queue.push_back(y);
                }
            }
        }
    }
    return p;
}

Scale naive_hierarchical_scale(const ScaleMap& partial, VertexId query, Weight link_weight,
                               ScanVariant variant, std::optional<Scale> v_bound) {
    const auto leveled = partial.leveled_edges();
    Weight max_weight = link_weight;
    for (const auto& e : partial.edges) max_weight = std::max(max_weight, e.weight);
    const Scale bound = v_bound.value_or(partial.max_scale() +
                                         max_weight * static_cast<Scale>(partial.vertex_count) + 1);

    // S(X*(v)) with X*(v) rebuilt from scratch whenever v reaches a new scale
    const auto levels = partial.distinct_scales();
    std::size_t next_level = 0;
    std::int64_t current = 0;
    auto relative_scale_at = [&](Scale v) {
        if (v == 0 || (next_level < levels.size() && levels[next_level] <= v)) {
            while (next_level < levels.size() && levels[next_level] <= v) ++next_level;
            const Partition p =
                bfs_partition(partial.vertex_count, leveled, v, ThresholdMode::inclusive);
            const auto region = p.labels[query];
            std::int64_t size = 0;
            for (auto l : p.labels) size += l == region;
            Weight internal = 0;
            for (const auto& e : partial.edges) {
                if (p.labels[e.u] == region && p.labels[e.v] == region) {
                    internal = std::max(internal, e.weight);
                }
            }
            current = (link_weight - internal) * size;
        }
        return current;
    };

    if (variant == ScanVariant::literal) {
        relative_scale_at(0);
        for (Scale v = 1; v <= bound; ++v) {
            if (relative_scale_at(v) <= v) return v;
        }
        return bound;
    }
    Scale largest_violation = -1;
    for (Scale v = 0; v <= bound; ++v) {
        if (relative_scale_at(v) > v) largest_violation = v;
    }
    return std::max<Scale>(1, largest_violation + 1);
}

Weight exhaustive_mst_weight(const EdgeWeightedGraph& graph) {
    const std::size_t n = graph.vertex_count();
    if (n > 12) throw InvalidInput("exhaustive spanning tree search is limited to 12 vertices");
    const auto edges = graph.edges();

    // number of components, by flood fill
    const std::vector<LeveledEdge> all = [&] {
        std::vector<LeveledEdge> out;
        for (const auto& e : edges) out.push_back({e.u, e.v, 0});
        return out;
    }();
    const std::size_t components = bfs_partition(n, all, 0, ThresholdMode::inclusive).region_count;
    const std::size_t needed = n - components;

    Weight best = std::numeric_limits<Weight>::max();
    using Parents = std::array<int, 12>;
    auto root = [](Parents& parent, int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    std::function<void(std::size_t, std::size_t, Weight, Parents)> choose =
        [&](std::size_t next, std::size_t taken, Weight total, Parents parent) {
            if (taken == needed) {
                best = std::min(best, total);
                return;
            }
            if (next >= edges.size() || edges.size() - next < needed - taken) return;
            // skip this edge
            choose(next + 1, taken, total, parent);
            // take it if it closes no cycle
            const int a = root(parent, static_cast<int>(edges[next].u));
            const int b = root(parent, static_cast<int>(edges[next].v));
            if (a != b) {
                parent[a] = b;
                choose(next + 1, taken + 1, total + edges[next].weight, parent);
            }
        };
    Parents start{};
    for (int i = 0; i < 12; ++i) start[i] = i;
    choose(0, 0, 0, start);
    return best;
}

// --- Property checks -------------------------------------------------------

namespace {

std::string join(std::span<const VertexId> vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + std::to_string(vs[i]);
    return out;
}

std::string scale_map_instance(const ScaleMap& map) {
    std::ostringstream out;
    out << "instance scale_map\n"
        << "vertices " << map.vertex_count << "\n";
    for (std::size_t i = 0; i < map.edges.size(); ++i) {
        out << "edge " << map.edges[i].u << ' ' << map.edges[i].v << ' ' << map.edges[i].weight << ' '
            << map.scales[i] << "\n";
    }
    return out.str();
}

std::string partitions_instance(std::span<const Partition> parts, std::span<const Scale> levels) {
    std::ostringstream out;
    out << "instance partitions\n"
        << "vertices " << (parts.empty() ? 0 : parts[0].vertex_count()) << "\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out << "level " << levels[i];
        for (auto l : parts[i].labels) out << ' ' << l;
        out << "\n";
    }
    return out.str();
}

std::vector<Scale> check_levels(const ScaleMap& map) {
    std::set<Scale> levels{0};
    for (auto s : map.scales) {
        if (s == kInfiniteScale) throw InvalidInput("property checks need finite scales");
        levels.insert(s);
    }
    return {levels.begin(), levels.end()};
}

std::vector<Partition> cuts_at(const ScaleMap& map, std::span<const Scale> levels) {
    const auto leveled = map.leveled_edges();
    std::vector<Partition> out;
    for (auto l : levels) out.push_back(bfs_partition(map.vertex_count, leveled, l, ThresholdMode::inclusive));
    return out;
}

PropertyReport causality_of(std::span<const Partition> parts, std::span<const Scale> levels) {
    PropertyReport report;
    report.property = "causality";
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].region_count > parts[i - 1].region_count) {
            report.passed = false;
            report.message = "region count rises from " + std::to_string(parts[i - 1].region_count) +
                             " at level " + std::to_string(levels[i - 1]) + " to " +
                             std::to_string(parts[i].region_count) + " at level " + std::to_string(levels[i]);
            return report;
        }
    }
    return report;
}

PropertyReport nestedness_of(std::span<const Partition> parts, std::span<const Scale> levels) {
    PropertyReport report;
    report.property = "nestedness";
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto& finer = parts[i - 1];
        const auto& coarser = parts[i];
        if (refines(finer, coarser)) continue;
        // first region of the finer partition split by the coarser one
        const auto regions = finer.regions();
        for (const auto& region : regions) {
            const auto target = coarser.labels[region.front()];
            const bool split = std::any_of(region.begin(), region.end(),
                                           [&](VertexId v) { return coarser.labels[v] != target; });
            if (!split) continue;
            report.passed = false;
            report.offending_region = region;
            report.message = "region {" + join(region) + "} at level " + std::to_string(levels[i - 1]) +
                             " straddles several regions at level " + std::to_string(levels[i]);
            return report;
        }
    }
    return report;
}

}  // namespace

PropertyReport check_causality(const ScaleMap& scale_map) {
    const auto levels = check_levels(scale_map);
    auto report = causality_of(cuts_at(scale_map, levels), levels);
    if (!report.passed) report.counterexample = scale_map_instance(scale_map);
    return report;
}

PropertyReport check_nestedness(const ScaleMap& scale_map) {
    const auto levels = check_levels(scale_map);
    auto report = nestedness_of(cuts_at(scale_map, levels), levels);
    if (!report.passed) report.counterexample = scale_map_instance(scale_map);
    return report;
}

PropertyReport check_causality(std::span<const Partition> partitions, std::span<const Scale> levels) {
    if (partitions.size() != levels.size()) throw InvalidInput("one level per partition required");
    auto report = causality_of(partitions, levels);
    if (!report.passed) report.counterexample = partitions_instance(partitions, levels);
    return report;
}

PropertyReport check_nestedness(std::span<const Partition> partitions, std::span<const Scale> levels) {
    if (partitions.size() != levels.size()) throw InvalidInput("one level per partition required");
    auto report = nestedness_of(partitions, levels);
    if (!report.passed) report.counterexample = partitions_instance(partitions, levels);
    return report;
}

std::string to_text(const PropertyReport& report) {
    std::ostringstream out;
    out << "property " << report.property << "\n"
        << "status " << (report.passed ? "pass" : "fail") << "\n";
    if (!report.message.empty()) out << "message " << report.message << "\n";
    if (!report.offending_region.empty()) out << "offending " << join(report.offending_region) << "\n";
    out << report.counterexample;
    return out.str();
}

PropertyReport replay(const std::string& report_text) {
    std::istringstream in(report_text);
    std::string line, property, instance;
    std::size_t vertices = 0;
    ScaleMap map;
    std::vector<Partition> parts;
    std::vector<Scale> levels;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "property") {
            fields >> property;
        } else if (key == "instance") {
            fields >> instance;
        } else if (key == "vertices") {
            fields >> vertices;
            map.vertex_count = vertices;
        } else if (key == "edge") {
            WeightedEdge e;
            Scale s;
            if (!(fields >> e.u >> e.v >> e.weight >> s)) throw InvalidInput("malformed edge record: " + line);
            e.id = static_cast<EdgeId>(map.edges.size());
            map.edges.push_back(e);
            map.scales.push_back(s);
        } else if (key == "level") {
            Scale level;
            fields >> level;
            std::vector<std::uint32_t> keys;
            for (std::uint32_t l; fields >> l;) keys.push_back(l);
            if (keys.size() != vertices) throw InvalidInput("partition record has the wrong length");
            parts.push_back(Partition::from_keys(keys));
            levels.push_back(level);
        }
    }
    for (const auto& e : map.edges) {
        if (e.u >= vertices || e.v >= vertices) throw InvalidInput("edge endpoint out of range");
    }
    if (instance == "scale_map") {
        if (property == "causality") return check_causality(map);
        if (property == "nestedness") return check_nestedness(map);
    } else if (instance == "partitions") {
        if (property == "causality") return check_causality(parts, levels);
        if (property == "nestedness") return check_nestedness(parts, levels);
    }
    throw InvalidInput("report has no replayable instance");
}

// --- Random instances --------------------------------------------------------

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

EdgeWeightedGraph random_graph(std::mt19937_64& rng, const GraphSpec& spec) {
    auto n = static_cast<std::size_t>(uniform(rng, std::int64_t(spec.min_vertices),
                                              std::int64_t(spec.max_vertices)));
    auto weight = [&] { return uniform(rng, 0, spec.max_weight); };

    if (uniform(rng, 0, 1) == 0) {
        const auto width = static_cast<std::size_t>(uniform(rng, 1, std::min<std::int64_t>(8, n)));
        const std::size_t height = std::max<std::size_t>(n / width, width == 1 ? 2 : 1);
        const GridShape grid{width, height};
        std::vector<WeightedEdge> edges;
        for (std::size_t r = 0; r < height; ++r) {
            for (std::size_t c = 0; c < width; ++c) {
                if (c + 1 < width) edges.push_back({grid.vertex(r, c), grid.vertex(r, c + 1), weight()});
                if (r + 1 < height) edges.push_back({grid.vertex(r, c), grid.vertex(r + 1, c), weight()});
            }
        }
        return EdgeWeightedGraph(width * height, std::move(edges), grid);
    }

    std::vector<WeightedEdge> edges;
    std::set<std::pair<VertexId, VertexId>> used;
    for (VertexId v = 1; v < n; ++v) {
        const auto u = static_cast<VertexId>(uniform(rng, 0, v - 1));
        edges.push_back({u, v, weight()});
        used.insert({u, v});
    }
    const auto extra = uniform(rng, 0, std::int64_t(n));
    for (std::int64_t k = 0; k < extra; ++k) {
        auto u = static_cast<VertexId>(uniform(rng, 0, std::int64_t(n) - 1));
        auto v = static_cast<VertexId>(uniform(rng, 0, std::int64_t(n) - 1));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!used.insert({u, v}).second) continue;
        edges.push_back({u, v, weight()});
    }
    return EdgeWeightedGraph(n, std::move(edges));
}

RgbImage synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RgbImage img(width, height);
    const double base[3] = {double(uniform(rng, 0, 255)), double(uniform(rng, 0, 255)),
                            double(uniform(rng, 0, 255))};
    const double slope[3] = {double(uniform(rng, -60, 60)), double(uniform(rng, -60, 60)),
                             double(uniform(rng, -60, 60))};

    struct Blob {
        double cx, cy, radius;
        bool square;
        double color[3];
    };
    std::vector<Blob> blobs(static_cast<std::size_t>(uniform(rng, 2, 6)));
    for (auto& b : blobs) {
        b.cx = double(uniform(rng, 0, std::int64_t(width) - 1));
        b.cy = double(uniform(rng, 0, std::int64_t(height) - 1));
        b.radius = double(uniform(rng, 2, std::max<std::int64_t>(3, std::int64_t(std::min(width, height)) / 3)));
        b.square = uniform(rng, 0, 1) == 1;
        for (double& c : b.color) c = double(uniform(rng, 0, 255));
    }
    const std::int64_t noise = uniform(rng, 2, 12);

    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            double px[3];
            for (int k = 0; k < 3; ++k) {
                px[k] = base[k] + slope[k] * (double(c) / double(width) - double(r) / double(height));
            }
            for (const auto& b : blobs) {
                const double dx = double(c) - b.cx, dy = double(r) - b.cy;
                const bool inside = b.square ? std::max(std::abs(dx), std::abs(dy)) <= b.radius
                                             : dx * dx + dy * dy <= b.radius * b.radius;
                if (inside) std::copy(std::begin(b.color), std::end(b.color), px);
            }
            std::uint8_t out[3];
            for (int k = 0; k < 3; ++k) {
                const double v = px[k] + double(uniform(rng, -noise, noise));
                out[k] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
            img.at(r, c) = {out[0], out[1], out[2]};
        }
    }
    return img;
}

}  // namespace hgseg::oracle
