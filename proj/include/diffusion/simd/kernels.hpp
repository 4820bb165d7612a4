#pragma once

// Bitmask kernels for graphs with at most 63 vertices.
//
// Every kernel exists as a scalar reference and, where the target supports
// it, a vector variant. The variants must agree bit for bit with the scalar
// reference; tests/test_simd_equivalence.cpp checks that on random inputs.
// active_kernels() picks the widest variant the running CPU supports. The
// environment variable DIFFUSION_SIMD=scalar|avx2|neon forces a choice.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "diffusion/graph.hpp"

namespace diffusion::simd {

enum class Isa { scalar, avx2, neon };

struct KernelSet {
    Isa isa;
    std::string_view name;

    /// out[v] = popcount(adj[v] & set) for v < n.
    void (*neighbor_counts)(const MaskRows& adj, int n, std::uint64_t set, std::span<std::int32_t> out);

    /// delta[v] = #{u ~ v : stacks[u] > stacks[v]} - #{u ~ v : stacks[u] < stacks[v]}.
    void (*fire_deltas)(const MaskRows& adj, int n, std::span<const std::int64_t> stacks,
                        std::span<std::int32_t> delta);

    /// Complementary-component-dominance test: every edge inside h joins
    /// vertices with equally many neighbours outside h, and every edge
    /// outside h joins vertices with equally many neighbours inside h.
    bool (*is_ccd)(const MaskRows& adj, int n, std::uint64_t h);

    /// Every vertex is in s or adjacent to a vertex of s.
    bool (*is_dominating)(const MaskRows& adj, int n, std::uint64_t s);
};

const KernelSet& scalar_kernels();

/// Null when the variant was not compiled in or the CPU lacks the feature.
const KernelSet* avx2_kernels();
const KernelSet* neon_kernels();

/// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available_kernels();

const KernelSet& active_kernels();

}  // namespace diffusion::simd
