// AArch64 NEON kernels. Built only for aarch64 targets, where Advanced SIMD
// is part of the base ISA.

#include <arm_neon.h>

#include <bit>

#include "diffusion/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diffusion::simd {

namespace {

inline uint64x2_t popcount_u64(uint64x2_t x) {
    return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(vreinterpretq_u8_u64(x)))));
}

// Lane i is all ones iff bit i of `bits` is set (i < 2).
inline uint64x2_t expand_pair(std::uint64_t bits) {
    const uint64x2_t sel = vcombine_u64(vcreate_u64(1), vcreate_u64(2));
    return vceqq_u64(vandq_u64(vdupq_n_u64(bits & 0x3), sel), sel);
}

void neighbor_counts_neon(const MaskRows& adj, int n, std::uint64_t set, std::span<std::int32_t> out) {
    const uint64x2_t sv = vdupq_n_u64(set);
    for (int v = 0; v < n; v += 2) {
        const uint64x2_t c = popcount_u64(vandq_u64(vld1q_u64(adj.data() + v), sv));
        out[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(vgetq_lane_u64(c, 0));
        if (v + 1 < n) out[static_cast<std::size_t>(v + 1)] = static_cast<std::int32_t>(vgetq_lane_u64(c, 1));
    }
}

void fire_deltas_neon(const MaskRows& adj, int n, std::span<const std::int64_t> stacks,
                      std::span<std::int32_t> delta) {
    alignas(16) std::int64_t buf[64] = {};
    for (int v = 0; v < n; ++v) buf[v] = stacks[static_cast<std::size_t>(v)];

    for (int v = 0; v < n; ++v) {
        const int64x2_t mine = vdupq_n_s64(buf[v]);
        const std::uint64_t row = adj[static_cast<std::size_t>(v)];
        int64x2_t acc = vdupq_n_s64(0);
        for (int b = 0; b < n; b += 2) {
            const std::uint64_t pair = (row >> b) & 0x3;
            if (pair == 0) continue;
            const uint64x2_t m = expand_pair(pair);
            const int64x2_t theirs = vld1q_s64(buf + b);
            const uint64x2_t richer = vandq_u64(vcgtq_s64(theirs, mine), m);
            const uint64x2_t poorer = vandq_u64(vcgtq_s64(mine, theirs), m);
            acc = vaddq_s64(acc, vsubq_s64(vreinterpretq_s64_u64(poorer), vreinterpretq_s64_u64(richer)));
        }
        delta[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(vaddvq_s64(acc));
    }
}

bool is_ccd_neon(const MaskRows& adj, int n, std::uint64_t h) {
    const std::uint64_t full = VertexSet::full_bits(n);
    const std::uint64_t rest = ~h & full;
    const uint64x2_t hv = vdupq_n_u64(h);
    const uint64x2_t rv = vdupq_n_u64(rest);

    alignas(16) std::uint8_t keys[64];
    for (int i = 0; i < 64; ++i) keys[i] = 0xFF;
    for (int v = 0; v < n; v += 2) {
        const uint64x2_t other = vbslq_u64(expand_pair(h >> v), rv, hv);
        const uint64x2_t c = popcount_u64(vandq_u64(vld1q_u64(adj.data() + v), other));
        keys[v] = static_cast<std::uint8_t>(vgetq_lane_u64(c, 0));
        if (v + 1 < n) keys[v + 1] = static_cast<std::uint8_t>(vgetq_lane_u64(c, 1));
    }

    // Bit i of each lane byte group selects vertex i within a 16-key block.
    const uint8x16_t weights = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};
    uint8x16_t blocks[4];
    for (int q = 0; q < 4; ++q) blocks[q] = vld1q_u8(keys + 16 * q);
    for (int v = 0; v < n; ++v) {
        const std::uint64_t same = adj[static_cast<std::size_t>(v)] & (((h >> v) & 1U) ? h : rest);
        if (same == 0) continue;
        const uint8x16_t key = vdupq_n_u8(keys[v]);
        std::uint64_t equal = 0;
        for (int q = 0; q < 4; ++q) {
            const uint8x16_t bits = vandq_u8(vceqq_u8(blocks[q], key), weights);
            const std::uint64_t lo = vaddv_u8(vget_low_u8(bits));
            const std::uint64_t hi = vaddv_u8(vget_high_u8(bits));
            equal |= (lo | (hi << 8)) << (16 * q);
        }
        if (same & ~equal) return false;
    }
    return true;
}

bool is_dominating_neon(const MaskRows& adj, int n, std::uint64_t s) {
    const std::uint64_t full = VertexSet::full_bits(n);
    const uint64x2_t sv = vdupq_n_u64(s);
    for (int v = 0; v < n; v += 2) {
        const uint64x2_t self = vshlq_u64(vdupq_n_u64(1), vcombine_s64(vcreate_s64(static_cast<std::uint64_t>(v)),
                                                                       vcreate_s64(static_cast<std::uint64_t>(v + 1))));
        const uint64x2_t closed = vorrq_u64(vld1q_u64(adj.data() + v), self);
        const uint64x2_t missed = vceqzq_u64(vandq_u64(closed, sv));
        const uint64x2_t bad = vandq_u64(missed, expand_pair(full >> v));
        if ((vgetq_lane_u64(bad, 0) | vgetq_lane_u64(bad, 1)) != 0) return false;
    }
    return true;
}

}  // namespace

namespace detail {

const KernelSet& neon_table() {
    static constexpr KernelSet kSet{
        Isa::neon, "neon", neighbor_counts_neon, fire_deltas_neon, is_ccd_neon, is_dominating_neon,
    };
    return kSet;
}

}  // namespace detail

}  // namespace diffusion::simd
