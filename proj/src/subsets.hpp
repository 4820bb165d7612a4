#pragma once

// Subset enumeration helpers shared by the quiescence and enumeration
// modules. Masks of a fixed popcount are visited in increasing numeric order
// (Gosper's hack); parallel callers split that order into contiguous rank
// ranges using the combinatorial number system.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "diffusion/graph.hpp"
#include "diffusion/simd/kernels.hpp"

namespace diffusion::detail {

std::uint64_t binomial(int n, int k);

/// The rank-th mask (0-based) with popcount k in increasing numeric order.
std::uint64_t unrank_combination(std::uint64_t rank, int k);

inline std::uint64_t next_combination(std::uint64_t x) {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

/// Splits [0, total) into `parts` contiguous ranges and runs body(begin, end)
/// on each, one thread per range beyond the first.
void parallel_ranges(std::uint64_t total, int parts,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body);

/// Perturb-then-fire zero test on bitmask rows without allocation.
bool zero2_masks(const simd::KernelSet& k, const MaskRows& adj, int n, std::uint64_t h);

}  // namespace diffusion::detail
