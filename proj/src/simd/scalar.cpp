#include "hgseg/simd/edge_weight_kernels.hpp"

#include <cmath>

namespace hgseg::simd {

std::uint32_t rounded_sqrt(std::uint32_t squared) {
    auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(squared)));
    // fix up the floor root exactly
    while (static_cast<std::uint64_t>(root) * root > squared) --root;
    while (static_cast<std::uint64_t>(root + 1) * (root + 1) <= squared) ++root;
    // (root + 1/2)^2 = root^2 + root + 1/4 is never an integer, so there are
    // no exact ties and rounding up happens iff squared > root^2 + root.
    return squared - root * root > root ? root + 1 : root;
}

void edge_weights_scalar(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out) {
    for (std::size_t i = 0; i < count; ++i) {
        const int dr = int(a.r[i]) - int(b.r[i]);
        const int dg = int(a.g[i]) - int(b.g[i]);
        const int db = int(a.b[i]) - int(b.b[i]);
        out[i] = rounded_sqrt(static_cast<std::uint32_t>(dr * dr + dg * dg + db * db));
    }
}

}  // namespace hgseg::simd
