#include "hgseg/fh.hpp"

#include <algorithm>

#include "hgseg/error.hpp"
#include "hgseg/image_io.hpp"

namespace hgseg {

namespace {

using Wide = __int128;

// Int + k/size as the fraction (Int*size + k) / size.
struct Bound {
    Wide num;
    Wide den;
};

Bound merge_bound(const RegionStats& r, std::int64_t k) {
    return {Wide(r.internal_difference) * r.size + k, r.size};
}

bool less_equal(Bound a, Bound b) { return a.num * b.den <= b.num * a.den; }

}  // namespace

std::int64_t relative_scale(const RegionStats& x, Weight diff) {
    return (diff - x.internal_difference) * x.size;
}

std::int64_t observation_scale(const RegionStats& x, const RegionStats& y, Weight diff) {
    return std::max(relative_scale(x, diff), relative_scale(y, diff));
}

bool fh_merge_predicate(const RegionStats& x, const RegionStats& y, Weight diff, std::int64_t k) {
    if (x.size < 1 || y.size < 1) throw InvalidInput("region size must be positive");
    const Bound bx = merge_bound(x, k), by = merge_bound(y, k);
    const Bound tighter = less_equal(bx, by) ? bx : by;
    return less_equal({diff, 1}, tighter);
}

Partition segment_fh(const Mst& mst, std::int64_t k) {
    if (k < 0) throw InvalidInput("k must be non-negative");
    UnionFind sets(mst.vertex_count);
    std::vector<Weight> internal(mst.vertex_count, 0);
    for (const auto& e : mst.edges) {
        const VertexId a = sets.find(e.u), b = sets.find(e.v);
        if (a == b) continue;
        const RegionStats x{static_cast<std::int64_t>(sets.size_of(a)), internal[a]};
        const RegionStats y{static_cast<std::int64_t>(sets.size_of(b)), internal[b]};
        if (fh_merge_predicate(x, y, e.weight, k)) {
            const VertexId root = sets.unite(a, b);
            internal[root] = std::max({x.internal_difference, y.internal_difference, e.weight});
        }
    }
    return Partition::from_union_find(sets);
}

Partition segment_fh(const EdgeWeightedGraph& graph, const Mst& mst, const FhParams& params) {
    Partition p = segment_fh(mst, params.k);
    if (params.min_area) p = area_filter(p, graph, *params.min_area);
    return p;
}

}  // namespace hgseg
