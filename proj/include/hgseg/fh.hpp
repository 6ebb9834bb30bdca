#pragma once

#include <cstdint>
#include <optional>

#include "hgseg/graph.hpp"

namespace hgseg {

/// Size and internal difference (largest MST weight inside) of a region.
struct RegionStats {
    std::int64_t size = 1;
    Weight internal_difference = 0;
};

struct FhParams {
    std::int64_t k = 0;
    std::optional<std::size_t> min_area;
};

/// Scale of X relative to Y: (diff - Int(X)) * |X|. Negative when diff < Int(X).
std::int64_t relative_scale(const RegionStats& x, Weight diff);

/// max of the two relative scales; X and Y merge at parameter k iff k >= this.
std::int64_t observation_scale(const RegionStats& x, const RegionStats& y, Weight diff);

/// diff <= min(Int(X) + k/|X|, Int(Y) + k/|Y|), evaluated in exact rationals.
bool fh_merge_predicate(const RegionStats& x, const RegionStats& y, Weight diff, std::int64_t k);

/// Region merging at a fixed k over the MST edges in canonical order.
Partition segment_fh(const Mst& mst, std::int64_t k);

/// As above, followed by area filtering over `graph` when params.min_area is set.
Partition segment_fh(const EdgeWeightedGraph& graph, const Mst& mst, const FhParams& params);

}  // namespace hgseg
