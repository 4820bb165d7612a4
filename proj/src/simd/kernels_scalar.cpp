// Scalar reference kernels. The vector variants are tested against these.

#include <bit>

#include "diffusion/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diffusion::simd {

namespace {

void neighbor_counts_scalar(const MaskRows& adj, int n, std::uint64_t set, std::span<std::int32_t> out) {
    for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = std::popcount(adj[static_cast<std::size_t>(v)] & set);
}

void fire_deltas_scalar(const MaskRows& adj, int n, std::span<const std::int64_t> stacks,
                        std::span<std::int32_t> delta) {
    for (int v = 0; v < n; ++v) {
        const auto mine = stacks[static_cast<std::size_t>(v)];
        std::int32_t d = 0;
        for (auto b = adj[static_cast<std::size_t>(v)]; b != 0; b &= b - 1) {
            const auto theirs = stacks[static_cast<std::size_t>(std::countr_zero(b))];
            d += static_cast<std::int32_t>(theirs > mine) - static_cast<std::int32_t>(theirs < mine);
        }
        delta[static_cast<std::size_t>(v)] = d;
    }
}

bool is_ccd_scalar(const MaskRows& adj, int n, std::uint64_t h) {
    const std::uint64_t full = VertexSet::full_bits(n);
    const std::uint64_t rest = ~h & full;
    int key[64];
    for (int v = 0; v < n; ++v) {
        const std::uint64_t other = ((h >> v) & 1U) ? rest : h;
        key[v] = std::popcount(adj[static_cast<std::size_t>(v)] & other);
    }
    for (int v = 0; v < n; ++v) {
        const std::uint64_t same = adj[static_cast<std::size_t>(v)] & (((h >> v) & 1U) ? h : rest);
        for (auto b = same; b != 0; b &= b - 1) {
            if (key[std::countr_zero(b)] != key[v]) return false;
        }
    }
    return true;
}

bool is_dominating_scalar(const MaskRows& adj, int n, std::uint64_t s) {
    for (int v = 0; v < n; ++v) {
        const std::uint64_t closed = adj[static_cast<std::size_t>(v)] | (std::uint64_t{1} << v);
        if ((closed & s) == 0) return false;
    }
    return true;
}

}  // namespace

const KernelSet& scalar_kernels() {
    static constexpr KernelSet kSet{
        Isa::scalar, "scalar", neighbor_counts_scalar, fire_deltas_scalar, is_ccd_scalar, is_dominating_scalar,
    };
    return kSet;
}

}  // namespace diffusion::simd
