#include "hgseg/simd/edge_weight_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define HGSEG_HAVE_AVX2_KERNEL 1
#include <immintrin.h>
#endif

#include <stdexcept>

namespace hgseg::simd::detail {

#if defined(HGSEG_HAVE_AVX2_KERNEL)

namespace {

__attribute__((target("avx2"))) inline __m256i widen8(const std::uint8_t* p) {
    return _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(p)));
}

}  // namespace

// Eight edges per iteration. Squared distances stay below 3 * 255^2, where
// float sqrt is at least 2.8e-4 away from any half-integer, far above the
// accumulated rounding error, so truncating sqrt + 0.5 reproduces the exact
// integer rounding of the scalar kernel.
__attribute__((target("avx2"))) void edge_weights_avx2(PlanarRow a, PlanarRow b,
                                                       std::size_t count, std::uint32_t* out) {
    const __m256 half = _mm256_set1_ps(0.5f);
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256i dr = _mm256_sub_epi32(widen8(a.r + i), widen8(b.r + i));
        const __m256i dg = _mm256_sub_epi32(widen8(a.g + i), widen8(b.g + i));
        const __m256i db = _mm256_sub_epi32(widen8(a.b + i), widen8(b.b + i));
        __m256i sq = _mm256_mullo_epi32(dr, dr);
        sq = _mm256_add_epi32(sq, _mm256_mullo_epi32(dg, dg));
        sq = _mm256_add_epi32(sq, _mm256_mullo_epi32(db, db));
        const __m256 root = _mm256_sqrt_ps(_mm256_cvtepi32_ps(sq));
        const __m256i rounded = _mm256_cvttps_epi32(_mm256_add_ps(root, half));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), rounded);
    }
    if (i < count) {
        const PlanarRow ta{a.r + i, a.g + i, a.b + i};
        const PlanarRow tb{b.r + i, b.g + i, b.b + i};
        edge_weights_scalar(ta, tb, count - i, out + i);
    }
}

#else

void edge_weights_avx2(PlanarRow, PlanarRow, std::size_t, std::uint32_t*) {
    throw std::logic_error("AVX2 kernel not compiled for this target");
}

#endif

}  // namespace hgseg::simd::detail
