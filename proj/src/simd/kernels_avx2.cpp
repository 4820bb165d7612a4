// AVX2 kernels. This file is compiled with -mavx2 -mpopcnt; nothing in it may
// run before dispatch.cpp has confirmed the CPU supports both.

#include <immintrin.h>

#include <bit>

#include "diffusion/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diffusion::simd {

namespace {

// Per-64-bit-lane popcount via the nibble lookup table.
inline __m256i popcount_epi64(__m256i x) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(x, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(x, 4), low);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

// Lane i is all ones iff bit i of `bits` is set (i < 4).
inline __m256i expand_nibble(std::uint64_t bits) {
    const __m256i sel = _mm256_setr_epi64x(1, 2, 4, 8);
    const __m256i b = _mm256_set1_epi64x(static_cast<long long>(bits & 0xF));
    return _mm256_cmpeq_epi64(_mm256_and_si256(b, sel), sel);
}

inline __m256i load_rows(const MaskRows& adj, int v) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(adj.data() + v));
}

inline std::int64_t hsum_epi64(__m256i x) {
    const __m128i s = _mm_add_epi64(_mm256_castsi256_si128(x), _mm256_extracti128_si256(x, 1));
    return _mm_cvtsi128_si64(s) + _mm_extract_epi64(s, 1);
}

void neighbor_counts_avx2(const MaskRows& adj, int n, std::uint64_t set, std::span<std::int32_t> out) {
    const __m256i sv = _mm256_set1_epi64x(static_cast<long long>(set));
    alignas(32) std::int64_t counts[4];
    for (int v = 0; v < n; v += 4) {
        _mm256_store_si256(reinterpret_cast<__m256i*>(counts), popcount_epi64(_mm256_and_si256(load_rows(adj, v), sv)));
        for (int i = 0; i < 4 && v + i < n; ++i) out[static_cast<std::size_t>(v + i)] = static_cast<std::int32_t>(counts[i]);
    }
}

void fire_deltas_avx2(const MaskRows& adj, int n, std::span<const std::int64_t> stacks,
                      std::span<std::int32_t> delta) {
    alignas(32) std::int64_t buf[64] = {};
    for (int v = 0; v < n; ++v) buf[v] = stacks[static_cast<std::size_t>(v)];

    for (int v = 0; v < n; ++v) {
        const __m256i mine = _mm256_set1_epi64x(buf[v]);
        const std::uint64_t row = adj[static_cast<std::size_t>(v)];
        __m256i acc = _mm256_setzero_si256();
        for (int b = 0; b < n; b += 4) {
            const std::uint64_t nib = (row >> b) & 0xF;
            if (nib == 0) continue;
            const __m256i m = expand_nibble(nib);
            const __m256i theirs = _mm256_load_si256(reinterpret_cast<const __m256i*>(buf + b));
            const __m256i richer = _mm256_and_si256(_mm256_cmpgt_epi64(theirs, mine), m);
            const __m256i poorer = _mm256_and_si256(_mm256_cmpgt_epi64(mine, theirs), m);
            // Compare masks are -1, so poorer - richer counts +1 per richer neighbour.
            acc = _mm256_add_epi64(acc, _mm256_sub_epi64(poorer, richer));
        }
        delta[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(hsum_epi64(acc));
    }
}

bool is_ccd_avx2(const MaskRows& adj, int n, std::uint64_t h) {
    const std::uint64_t full = VertexSet::full_bits(n);
    const std::uint64_t rest = ~h & full;
    const __m256i hv = _mm256_set1_epi64x(static_cast<long long>(h));
    const __m256i rv = _mm256_set1_epi64x(static_cast<long long>(rest));

    alignas(32) std::uint8_t keys[64];
    alignas(32) std::int64_t lanes[4];
    for (int i = 0; i < 64; ++i) keys[i] = 0xFF;
    for (int v = 0; v < n; v += 4) {
        const __m256i inside = expand_nibble(h >> v);
        const __m256i other = _mm256_blendv_epi8(hv, rv, inside);
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), popcount_epi64(_mm256_and_si256(load_rows(adj, v), other)));
        for (int i = 0; i < 4 && v + i < n; ++i) keys[v + i] = static_cast<std::uint8_t>(lanes[i]);
    }

    const __m256i k_lo = _mm256_load_si256(reinterpret_cast<const __m256i*>(keys));
    const __m256i k_hi = _mm256_load_si256(reinterpret_cast<const __m256i*>(keys + 32));
    for (int v = 0; v < n; ++v) {
        const std::uint64_t same = adj[static_cast<std::size_t>(v)] & (((h >> v) & 1U) ? h : rest);
        if (same == 0) continue;
        const __m256i key = _mm256_set1_epi8(static_cast<char>(keys[v]));
        const auto eq_lo = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(k_lo, key)));
        const auto eq_hi = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(k_hi, key)));
        const std::uint64_t equal = (std::uint64_t{eq_hi} << 32) | eq_lo;
        if (same & ~equal) return false;
    }
    return true;
}

bool is_dominating_avx2(const MaskRows& adj, int n, std::uint64_t s) {
    const std::uint64_t full = VertexSet::full_bits(n);
    const __m256i sv = _mm256_set1_epi64x(static_cast<long long>(s));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i zero = _mm256_setzero_si256();
    for (int v = 0; v < n; v += 4) {
        const __m256i self = _mm256_sllv_epi64(one, _mm256_setr_epi64x(v, v + 1, v + 2, v + 3));
        const __m256i closed = _mm256_or_si256(load_rows(adj, v), self);
        const __m256i missed = _mm256_cmpeq_epi64(_mm256_and_si256(closed, sv), zero);
        const __m256i valid = expand_nibble(full >> v);
        if (_mm256_movemask_pd(_mm256_castsi256_pd(_mm256_and_si256(missed, valid))) != 0) return false;
    }
    return true;
}

}  // namespace

namespace detail {

const KernelSet& avx2_table() {
    static constexpr KernelSet kSet{
        Isa::avx2, "avx2", neighbor_counts_avx2, fire_deltas_avx2, is_ccd_avx2, is_dominating_avx2,
    };
    return kSet;
}

}  // namespace detail

}  // namespace diffusion::simd
