#include <cstdio>
#include <cstdlib>
#include <string_view>

#include "diffusion/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diffusion::simd {

namespace {

#if defined(DIFFUSION_HAVE_AVX2)
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}
#endif

const KernelSet& select_kernels() {
    const char* forced = std::getenv("DIFFUSION_SIMD");
    const std::string_view want = forced ? forced : "auto";
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2") {
        if (const auto* k = avx2_kernels()) return *k;
        std::fprintf(stderr, "DIFFUSION_SIMD=avx2 unavailable on this machine; using best available\n");
    } else if (want == "neon") {
        if (const auto* k = neon_kernels()) return *k;
        std::fprintf(stderr, "DIFFUSION_SIMD=neon unavailable on this machine; using best available\n");
    } else if (want != "auto") {
        std::fprintf(stderr, "unknown DIFFUSION_SIMD value '%s'; using best available\n", forced);
    }
    if (const auto* k = avx2_kernels()) return *k;
    if (const auto* k = neon_kernels()) return *k;
    return scalar_kernels();
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(DIFFUSION_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet* neon_kernels() {
#if defined(DIFFUSION_HAVE_NEON)
    return &detail::neon_table();
#else
    return nullptr;
#endif
}

std::vector<const KernelSet*> available_kernels() {
    std::vector<const KernelSet*> out{&scalar_kernels()};
    if (const auto* k = avx2_kernels()) out.push_back(k);
    if (const auto* k = neon_kernels()) out.push_back(k);
    return out;
}

const KernelSet& active_kernels() {
    static const KernelSet& chosen = select_kernels();
    return chosen;
}

}  // namespace diffusion::simd
