#include <doctest.h>

#include <random>

#include "diffusion/enumeration.hpp"
#include "diffusion/quiescence.hpp"
#include "oracles.hpp"

using namespace diffusion;

TEST_CASE("perturb") {
    const auto p6 = path(6);
    CHECK(perturb(p6, VertexSet::of(6, {0, 1, 3, 4})) == Configuration{0, -1, 2, -1, -1, 1});
    CHECK(perturb(p6, VertexSet::empty(6)) == Configuration::zeros(6));
    CHECK(perturb(p6, VertexSet::full(6)) == Configuration::zeros(6));
    CHECK(perturb(complete(5), VertexSet::full(5)) == Configuration::zeros(5));
    CHECK_THROWS_AS(perturb(p6, VertexSet::empty(5)), std::invalid_argument);
}

TEST_CASE("CCD predicate") {
    CHECK(is_ccd(path(4), VertexSet::of(4, {1, 2})));
    CHECK_FALSE(is_ccd(path(6), VertexSet::of(6, {0, 1, 3, 4})));
    const auto fig = oracle::no_proper_zero2_graph();
    CHECK(is_ccd(fig, VertexSet::empty(6)));
    CHECK(is_ccd(fig, VertexSet::full(6)));
}

TEST_CASE("0_2-invoking by simulation") {
    const auto fig = oracle::no_proper_zero2_graph();
    for (std::uint64_t h = 1; h < 63; ++h) CHECK_FALSE(is_zero2_invoking(fig, VertexSet(6, h)));

    CHECK(is_zero2_invoking(complete_bipartite(3, 3), VertexSet::of(6, {0, 1, 2})));
    CHECK(is_zero2_invoking(complete_bipartite(3, 3), VertexSet::of(6, {3, 4, 5})));
    CHECK_FALSE(is_zero2_invoking(path(6), VertexSet::of(6, {0, 1, 3, 4})));
    CHECK(is_zero2_invoking(complete(1), VertexSet::full(1)));
}

TEST_CASE("0-invoking outcomes") {
    auto p4 = is_zero_invoking(path(4), VertexSet::of(4, {1, 2}));
    CHECK(p4.status == ZeroInvokingOutcome::Status::reached_zero);
    CHECK(p4.step == 2);

    auto full = is_zero_invoking(cycle(5), VertexSet::full(5));
    CHECK(full.reached_zero());
    CHECK(full.step == 0);
    CHECK(full.trace_len == 0);

    auto none = is_zero_invoking(cycle(5), VertexSet::empty(5));
    CHECK(none.reached_zero());
    CHECK(none.step == 0);

    // Edgeless graph: nothing moves.
    const auto edgeless = Graph::from_edge_list(3, std::span<const std::pair<int, int>>{});
    auto e = is_zero_invoking(edgeless, VertexSet::of(3, {1}));
    CHECK(e.reached_zero());
    CHECK(e.step == 0);

    // Golden outcome, cross-checked against a brute-force Python trace: the
    // single vertex v2 of the six-vertex graph settles into a nonzero period.
    auto fig = is_zero_invoking(oracle::no_proper_zero2_graph(), VertexSet::of(6, {1}));
    CHECK(fig.status == ZeroInvokingOutcome::Status::period_without_zero);
    REQUIRE(fig.period);
    CHECK_FALSE(is_zero_configuration(fig.period->period_configs.front()));

    auto capped = is_zero_invoking(path(6), VertexSet::of(6, {0, 1, 3, 4}), 1);
    CHECK(capped.status == ZeroInvokingOutcome::Status::cap_exceeded);
    CHECK(std::string(to_string(capped.status)) == "cap_exceeded");
}

TEST_CASE("PQ2 and PQ") {
    CHECK(pq2(path(7)) == 3);
    CHECK(pq2(oracle::no_proper_zero2_graph()) == 6);
    CHECK(pq2(complete(1)) == 1);
    CHECK(pq2(complete_bipartite(3, 3)) == 2);  // one vertex from each side
    CHECK(pq2(path(7), {.threads = 3}) == 3);

    auto p7 = pq(path(7));
    CHECK(p7.status == QuiescentNumber::Status::found);
    CHECK(p7.size == 3);
    auto fig = pq(oracle::no_proper_zero2_graph());
    CHECK(fig.status == QuiescentNumber::Status::found);
    CHECK(fig.size == 6);
    CHECK(pq(cycle(5), {.threads = 2}).size == 2);

    // With a one-step cap every nontrivial perturbation on P6 is cut off before
    // it can settle, so no size below the full set can be ruled out.
    auto unknown = pq(path(6), {.threads = 1, .max_steps = 1});
    CHECK(unknown.status == QuiescentNumber::Status::unknown);
}

TEST_CASE("0_2-invoking equals CCD, with the corollaries, on random graphs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 600; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        const auto g = oracle::random_graph(rng, n, 0.5);
        const auto m = oracle::matrix_of(g);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            const VertexSet h(n, bits);
            const bool z2 = is_zero2_invoking(g, h);
            CHECK(z2 == is_ccd(g, h));
            CHECK(z2 == oracle::zero2(m, bits));
            CHECK(perturb(g, h).total() == 0);
            if (z2) {
                CHECK(is_zero2_invoking(g, h.complement()));
                if (!h.is_empty() && is_connected(g)) CHECK(is_dominating(g, h));
                const auto z = is_zero_invoking(g, h);
                CHECK(z.reached_zero());
                CHECK(z.step <= 2);
            }
            if (is_efficient_dominating(g, h)) CHECK(is_ccd(g, h));
        }
        const int gamma = domination_number(g);
        CHECK(gamma == oracle::domination_number(m));
        if (is_connected(g)) CHECK(pq2(g).value() >= gamma);
    }
}

TEST_CASE("0_2-invoking subsets of disconnected graphs need not dominate") {
    // A whole component moves no chips when perturbed.
    const std::pair<int, int> k2[] = {{0, 1}};
    const auto g = Graph::from_edge_list(3, k2);
    const auto h = VertexSet::of(3, {0, 1});
    CHECK(is_zero2_invoking(g, h));
    CHECK_FALSE(is_dominating(g, h));
    CHECK(pq2(g) == 1);
    CHECK(domination_number(g) == 2);
}

TEST_CASE("minimal dominating sets of paths are CCD") {
    for (int n = 2; n <= 12; ++n) {
        const auto g = path(n);
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
            const VertexSet s(n, bits);
            if (is_minimal_dominating(g, s)) CHECK(is_ccd(g, s));
        }
    }
}
