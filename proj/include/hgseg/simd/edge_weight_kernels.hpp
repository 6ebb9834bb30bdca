#pragma once

// Per-edge RGB gradient kernels.
//
// Every backend computes, for i in [0, count):
//
//     out[i] = round_half_up(sqrt(dr^2 + dg^2 + db^2))
//
// where d* are channel differences between pixel i of plane set `a` and
// pixel i of plane set `b`. The scalar backend works in exact integer
// arithmetic and is the reference; vector backends must match it bit for
// bit over the whole input domain.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace hgseg::simd {

/// Three planar channel rows of equal length.
struct PlanarRow {
    const std::uint8_t* r;
    const std::uint8_t* g;
    const std::uint8_t* b;
};

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend backend);

/// Integer round-half-up square root of a squared distance.
std::uint32_t rounded_sqrt(std::uint32_t squared);

void edge_weights_scalar(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out);

/// Whether the backend was compiled in and the running CPU supports it.
bool backend_available(Backend backend);

/// Runs a specific backend. Throws std::logic_error if it is unavailable.
void edge_weights(Backend backend, PlanarRow a, PlanarRow b, std::size_t count,
                  std::uint32_t* out);

/// Best available backend, unless overridden by the HGSEG_SIMD environment
/// variable (scalar|avx2|neon) or set_active_backend().
Backend active_backend();
void set_active_backend(Backend backend);

inline void edge_weights(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out) {
    edge_weights(active_backend(), a, b, count, out);
}

namespace detail {
void edge_weights_avx2(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out);
void edge_weights_neon(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out);
}  // namespace detail

}  // namespace hgseg::simd
