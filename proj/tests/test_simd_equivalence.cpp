#include <doctest.h>

#include <limits>
#include <random>

#include "diffusion/graph.hpp"
#include "diffusion/simd/kernels.hpp"
#include "oracles.hpp"

using namespace diffusion;

namespace {

MaskRows random_rows(std::mt19937_64& rng, int n, double p) {
    return oracle::random_graph(rng, n, p).mask_rows();
}

}  // namespace

TEST_CASE("kernel inventory") {
    const auto kernels = simd::available_kernels();
    REQUIRE(!kernels.empty());
    CHECK(kernels.front()->isa == simd::Isa::scalar);
    MESSAGE("active kernels: " << simd::active_kernels().name << ", available: " << kernels.size());
}

TEST_CASE("every kernel variant matches the scalar reference") {
    const auto& ref = simd::scalar_kernels();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> density(0.0, 1.0);

    for (const auto* k : simd::available_kernels()) {
        CAPTURE(k->name);
        for (int trial = 0; trial < 3000; ++trial) {
            // Cover every tail length, including n = 0 and the full 63.
            const int n = trial < 64 ? trial % 64 : static_cast<int>(rng() % 64);
            if (n > kMaxMaskVertices) continue;
            const auto adj = random_rows(rng, n, density(rng));
            const std::uint64_t h = rng() & VertexSet::full_bits(n);
            CAPTURE(n);
            CAPTURE(h);

            std::vector<std::int32_t> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
            ref.neighbor_counts(adj, n, h, a);
            k->neighbor_counts(adj, n, h, b);
            CHECK(a == b);

            // Narrow stack ranges force many ties; wide ones exercise sign handling.
            const int spread = trial % 3 == 0 ? 1 : (trial % 3 == 1 ? 5 : 1'000'000);
            auto c = oracle::random_config(rng, n, -spread, spread);
            if (trial % 7 == 0 && n > 0) c[0] = std::numeric_limits<std::int64_t>::min();
            if (trial % 11 == 0 && n > 1) c[1] = std::numeric_limits<std::int64_t>::max();
            ref.fire_deltas(adj, n, c.stacks(), a);
            k->fire_deltas(adj, n, c.stacks(), b);
            CHECK(a == b);

            CHECK(ref.is_ccd(adj, n, h) == k->is_ccd(adj, n, h));
            CHECK(ref.is_dominating(adj, n, h) == k->is_dominating(adj, n, h));
        }
    }
}

TEST_CASE("kernels agree on CCD subsets, which are rare under random sampling") {
    // Exhaustive over all subsets of a few structured graphs where many
    // subsets are CCD, so the true branch is exercised as often as the false.
    const Graph graphs[] = {path(12), cycle(12), complete(10), complete_bipartite(6, 6), oracle::no_proper_zero2_graph()};
    const auto& ref = simd::scalar_kernels();
    for (const auto* k : simd::available_kernels()) {
        CAPTURE(k->name);
        for (const auto& g : graphs) {
            const int n = g.order();
            int ccd = 0;
            for (std::uint64_t h = 0; h < (std::uint64_t{1} << n); ++h) {
                const bool expect = ref.is_ccd(g.mask_rows(), n, h);
                ccd += expect;
                if (k->is_ccd(g.mask_rows(), n, h) != expect) FAIL("CCD mismatch at h=" << h);
            }
            CHECK(ccd >= 2);
        }
    }
}

TEST_CASE("scalar kernels match the literal definitions") {
    std::mt19937_64 rng(99);
    const auto& ref = simd::scalar_kernels();
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const auto g = oracle::random_graph(rng, n, 0.45);
        const auto m = oracle::matrix_of(g);
        const std::uint64_t h = rng() & VertexSet::full_bits(n);
        CHECK(ref.is_ccd(g.mask_rows(), n, h) == oracle::ccd(m, h));
        CHECK(ref.is_dominating(g.mask_rows(), n, h) == oracle::dominating(m, h));

        const auto c = oracle::random_config(rng, n, -3, 3);
        std::vector<std::int32_t> delta(static_cast<std::size_t>(n));
        ref.fire_deltas(g.mask_rows(), n, c.stacks(), delta);
        const auto next = oracle::fire(m, oracle::as_ll(c));
        for (int v = 0; v < n; ++v) CHECK(c[v] + delta[static_cast<std::size_t>(v)] == next[static_cast<std::size_t>(v)]);
    }
}
