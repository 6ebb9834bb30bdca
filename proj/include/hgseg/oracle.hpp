#pragma once

// Brute-force references and property checkers. Everything here is
// deliberately slow and shares no code path with the algorithms it checks.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hgseg/graph.hpp"
#include "hgseg/hierarchy.hpp"
#include "hgseg/image_io.hpp"

namespace hgseg::oracle {

/// Components by breadth-first search over admitted edges.
Partition bfs_partition(std::size_t vertex_count, std::span<const LeveledEdge> edges, Scale lambda,
                        ThresholdMode mode);

enum class ScanVariant {
    literal,     // stop at the first v with S(X*(v)) <= v
    stabilized,  // 1 + the largest violating v' up to the bound
};

/// Scans v = 1, 2, ... recomputing X*(v) from scratch with bfs_partition.
/// `v_bound` defaults to max assigned scale + max weight * vertex count + 1.
Scale naive_hierarchical_scale(const ScaleMap& partial, VertexId query, Weight link_weight,
                               ScanVariant variant, std::optional<Scale> v_bound = {});

/// Minimum spanning forest weight by enumerating every (n - c)-edge forest.
/// Throws InvalidInput above 12 vertices.
Weight exhaustive_mst_weight(const EdgeWeightedGraph& graph);

struct PropertyReport {
    std::string property;
    bool passed = true;
    std::string message;
    std::vector<VertexId> offending_region;
    /// Replayable instance document; empty when passed.
    std::string counterexample;
};

/// Region counts of cut(lambda) are non-increasing over 0 and every scale.
PropertyReport check_causality(const ScaleMap& scale_map);
/// Consecutive cuts over 0 and every scale refine each other.
PropertyReport check_nestedness(const ScaleMap& scale_map);

/// The same two checks over an explicit sequence of partitions at ascending levels.
PropertyReport check_causality(std::span<const Partition> partitions, std::span<const Scale> levels);
PropertyReport check_nestedness(std::span<const Partition> partitions, std::span<const Scale> levels);

std::string to_text(const PropertyReport& report);
/// Re-runs the check recorded in a report document on its embedded instance.
PropertyReport replay(const std::string& report_text);

// --- Seeded random instances -------------------------------------------------

struct GraphSpec {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 64;
    Weight max_weight = 31;
};

/// Connected random graph; roughly half grids, half random spanning tree
/// plus extra chords.
EdgeWeightedGraph random_graph(std::mt19937_64& rng, const GraphSpec& spec = {});

/// Piecewise-smooth colour image with a few blobs and mild noise.
RgbImage synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed);

/// Uniform integer in [lo, hi] that does not depend on the standard library's
/// distribution implementation.
std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace hgseg::oracle
