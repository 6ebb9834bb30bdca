#include "hgseg/simd/edge_weight_kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)
#define HGSEG_HAVE_NEON_KERNEL 1
#include <arm_neon.h>
#endif

#include <stdexcept>

namespace hgseg::simd::detail {

#if defined(HGSEG_HAVE_NEON_KERNEL)

namespace {

inline int32x4x2_t widen8(const std::uint8_t* p) {
    const uint16x8_t w = vmovl_u8(vld1_u8(p));
    return {{vreinterpretq_s32_u32(vmovl_u16(vget_low_u16(w))),
             vreinterpretq_s32_u32(vmovl_u16(vget_high_u16(w)))}};
}

inline uint32x4_t round_root(int32x4_t sq) {
    const float32x4_t root = vsqrtq_f32(vcvtq_f32_s32(sq));
    return vcvtq_u32_f32(vaddq_f32(root, vdupq_n_f32(0.5f)));
}

}  // namespace

void edge_weights_neon(PlanarRow a, PlanarRow b, std::size_t count, std::uint32_t* out) {
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const int32x4x2_t ar = widen8(a.r + i), br = widen8(b.r + i);
        const int32x4x2_t ag = widen8(a.g + i), bg = widen8(b.g + i);
        const int32x4x2_t ab = widen8(a.b + i), bb = widen8(b.b + i);
        for (int half = 0; half < 2; ++half) {
            const int32x4_t dr = vsubq_s32(ar.val[half], br.val[half]);
            const int32x4_t dg = vsubq_s32(ag.val[half], bg.val[half]);
            const int32x4_t db = vsubq_s32(ab.val[half], bb.val[half]);
            int32x4_t sq = vmulq_s32(dr, dr);
            sq = vmlaq_s32(sq, dg, dg);
            sq = vmlaq_s32(sq, db, db);
            vst1q_u32(out + i + 4 * half, round_root(sq));
        }
    }
    if (i < count) {
        const PlanarRow ta{a.r + i, a.g + i, a.b + i};
        const PlanarRow tb{b.r + i, b.g + i, b.b + i};
        edge_weights_scalar(ta, tb, count - i, out + i);
    }
}

#else

void edge_weights_neon(PlanarRow, PlanarRow, std::size_t, std::uint32_t*) {
    throw std::logic_error("NEON kernel not compiled for this target");
}

#endif

}  // namespace hgseg::simd::detail
