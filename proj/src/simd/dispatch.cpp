#include "hgseg/simd/edge_weight_kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hgseg::simd {

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend backend) {
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
            return true;
#else
            return false;
#endif
    }
    return false;
}

void edge_weights(Backend backend, PlanarRow a, PlanarRow b, std::size_t count,
                  std::uint32_t* out) {
    if (!backend_available(backend)) {
        throw std::logic_error("edge weight backend unavailable: " +
                               std::string(backend_name(backend)));
    }
    switch (backend) {
        case Backend::scalar: edge_weights_scalar(a, b, count, out); return;
        case Backend::avx2: detail::edge_weights_avx2(a, b, count, out); return;
        case Backend::neon: detail::edge_weights_neon(a, b, count, out); return;
    }
}

namespace {

Backend detect() {
    if (const char* forced = std::getenv("HGSEG_SIMD")) {
        const std::string_view name(forced);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
            if (name == backend_name(b) && backend_available(b)) return b;
        }
        return Backend::scalar;
    }
    if (backend_available(Backend::avx2)) return Backend::avx2;
    if (backend_available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

std::atomic<Backend>& active() {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

}  // namespace

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
    if (!backend_available(backend)) {
        throw std::logic_error("edge weight backend unavailable: " +
                               std::string(backend_name(backend)));
    }
    active().store(backend, std::memory_order_relaxed);
}

}  // namespace hgseg::simd
