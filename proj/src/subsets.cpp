#include "subsets.hpp"

#include <stdexcept>

namespace diffusion::detail {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    // Exact for n <= 64: each partial product r * (n - i) / (i + 1) is an integer.
    for (int i = 0; i < k; ++i) {
        const auto num = static_cast<unsigned __int128>(r) * static_cast<unsigned>(n - i);
        r = static_cast<std::uint64_t>(num / static_cast<unsigned>(i + 1));
    }
    return r;
}

std::uint64_t unrank_combination(std::uint64_t rank, int k) {
    std::uint64_t mask = 0;
    for (int i = k; i >= 1; --i) {
        int c = i - 1;
        while (binomial(c + 1, i) <= rank) ++c;
        mask |= std::uint64_t{1} << c;
        rank -= binomial(c, i);
    }
    return mask;
}

void parallel_ranges(std::uint64_t total, int parts,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    parts = std::max(1, parts);
    if (static_cast<std::uint64_t>(parts) > total) parts = static_cast<int>(std::max<std::uint64_t>(total, 1));
    if (parts == 1) {
        body(0, total);
        return;
    }
    const std::uint64_t chunk = total / static_cast<std::uint64_t>(parts);
    const std::uint64_t extra = total % static_cast<std::uint64_t>(parts);
    std::vector<std::thread> workers;
    std::uint64_t begin = 0;
    std::uint64_t first_end = 0;
    for (int p = 0; p < parts; ++p) {
        const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(p) < extra ? 1 : 0);
        if (p == 0) {
            first_end = end;
        } else {
            workers.emplace_back(body, begin, end);
        }
        begin = end;
    }
    body(0, first_end);
    for (auto& w : workers) w.join();
}

bool zero2_masks(const simd::KernelSet& k, const MaskRows& adj, int n, std::uint64_t h) {
    std::int32_t inside[64];
    std::int64_t stacks[64];
    std::int32_t delta[64];
    k.neighbor_counts(adj, n, h, std::span<std::int32_t>(inside, static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v) {
        const int deg = std::popcount(adj[static_cast<std::size_t>(v)]);
        stacks[v] = inside[v] - (((h >> v) & 1U) ? deg : 0);
    }
    k.fire_deltas(adj, n, std::span<const std::int64_t>(stacks, static_cast<std::size_t>(n)),
                  std::span<std::int32_t>(delta, static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v) {
        if (stacks[v] + delta[v] != 0) return false;
    }
    return true;
}

}  // namespace diffusion::detail
