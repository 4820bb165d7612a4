#include <doctest.h>

#include <limits>
#include <map>
#include <random>

#include "diffusion/engine.hpp"
#include "oracles.hpp"

using namespace diffusion;

namespace {

// Stack sizes from the worked P5 example, one row per step. The example
// lists columns v5..v1; reversing a path is an automorphism, so the row read
// left to right is used directly as vertices 0..4.
const std::vector<Configuration> kP5Trace = {
    {0, 2, 0, 4, 1}, {1, 0, 2, 2, 2}, {0, 2, 1, 2, 2}, {1, 0, 3, 1, 2},
    {0, 2, 1, 3, 1}, {1, 0, 3, 1, 2}, {0, 2, 1, 3, 1},
};

}  // namespace

TEST_CASE("fire reproduces the P5 worked example") {
    const auto g = path(5);
    CHECK(fire(g, kP5Trace[0]) == kP5Trace[1]);
    CHECK(fire(g, kP5Trace[3]) == kP5Trace[4]);
    CHECK(trace(g, kP5Trace[0], 6) == kP5Trace);
    CHECK(fire_reference(g, kP5Trace[0]) == kP5Trace[1]);
}

TEST_CASE("fire basics") {
    const auto g = complete(4);
    CHECK(fire(g, Configuration::zeros(4)) == Configuration::zeros(4));
    const Configuration c{3, -1, 0, 5};
    const auto next = fire(g, c);
    CHECK(c == Configuration{3, -1, 0, 5});  // input untouched
    CHECK(next == Configuration{3 + 1 - 2, -1 + 3, 0 + 2 - 1, 5 - 3});
    CHECK_THROWS_AS(fire(g, Configuration{1, 2}), std::invalid_argument);
}

TEST_CASE("stack arithmetic at the int64 limits") {
    // A vertex only loses chips when strictly richer than a neighbour, so fire
    // itself stays in range even at the extremes.
    constexpr auto lo = std::numeric_limits<std::int64_t>::min();
    constexpr auto hi = std::numeric_limits<std::int64_t>::max();
    CHECK(fire(path(3), Configuration{hi, lo, hi}) == Configuration{hi - 1, lo + 2, hi - 1});
    CHECK(fire(path(2), Configuration{lo, lo}) == Configuration{lo, lo});
    CHECK_THROWS_AS(shift(Configuration{std::numeric_limits<std::int64_t>::max()}, 1), OverflowError);
    CHECK_THROWS_AS(Configuration({std::numeric_limits<std::int64_t>::max(), 1}).total(), OverflowError);
}

TEST_CASE("induced orientation") {
    // P5 with stacks 15, 9, 8, 2, 12 on v1..v5.
    const auto g = path(5);
    const auto r = induced_orientation(g, Configuration{15, 9, 8, 2, 12});
    CHECK(r == Orientation{EdgeDir::to_higher, EdgeDir::to_higher, EdgeDir::to_higher, EdgeDir::to_lower});

    const auto flat = induced_orientation(complete(4), Configuration{7, 7, 7, 7});
    CHECK(flat == Orientation(6, EdgeDir::flat));

    CHECK(induced_orientation(path(2), Configuration{1, -1}) == Orientation{EdgeDir::to_higher});
}

TEST_CASE("run reports least preperiod and minimum period") {
    const auto g = path(5);
    auto result = run(g, kP5Trace[0]);
    REQUIRE(std::holds_alternative<PeriodReport>(result));
    const auto& rep = std::get<PeriodReport>(result);
    CHECK(rep.preperiod == 3);
    CHECK(rep.period == 2);
    REQUIRE(rep.period_configs.size() == 2);
    CHECK(rep.period_configs[0] == kP5Trace[3]);
    CHECK(rep.period_configs[1] == kP5Trace[4]);

    auto zero = std::get<PeriodReport>(run(cycle(5), Configuration::zeros(5)));
    CHECK(zero.preperiod == 0);
    CHECK(zero.period == 1);

    auto p3 = std::get<PeriodReport>(run(path(3), Configuration{1, 0, -1}));
    CHECK(p3.period == 1);
    CHECK(p3.preperiod == 1);
    CHECK(p3.period_configs.front() == Configuration::zeros(3));

    CHECK_THROWS_AS(run(g, kP5Trace[0], 0), std::invalid_argument);
}

TEST_CASE("run hits the cap with a diagnostic tail") {
    auto result = run(path(5), kP5Trace[0], 4);
    REQUIRE(std::holds_alternative<CapExceeded>(result));
    const auto& cap = std::get<CapExceeded>(result);
    CHECK(cap.steps_taken == 4);
    REQUIRE(cap.tail.size() == 2);
    CHECK(cap.tail.back() == kP5Trace[4]);
}

TEST_CASE("shift and zero predicates") {
    CHECK(shift(Configuration{0, 2, 0, 4, 1}, 3) == Configuration{3, 5, 3, 7, 4});
    CHECK(shift(Configuration{1, -1}, 1) == Configuration{2, 0});
    CHECK(shift(kP5Trace[2], 0) == kP5Trace[2]);
    CHECK(is_zero_configuration(Configuration{0, 0, 0}));
    CHECK_FALSE(is_zero_configuration(Configuration{0, 1, 0}));
    CHECK(trace(path(3), Configuration{1, 2, 3}, 0) == std::vector<Configuration>{Configuration{1, 2, 3}});
}

TEST_CASE("zero-preposition reconstruction") {
    auto p2 = zero_preposition_from_orientation(path(2), Orientation{EdgeDir::to_higher});
    REQUIRE(p2);
    CHECK(*p2 == Configuration{1, -1});
    CHECK(fire(path(2), *p2) == Configuration::zeros(2));

    CHECK_FALSE(zero_preposition_from_orientation(path(3), Orientation{EdgeDir::to_higher, EdgeDir::flat}));

    auto flat = zero_preposition_from_orientation(complete(4), Orientation(6, EdgeDir::flat));
    REQUIRE(flat);
    CHECK(*flat == Configuration::zeros(4));

    CHECK_THROWS_AS(zero_preposition_from_orientation(path(3), Orientation{EdgeDir::flat}), std::invalid_argument);
}

TEST_CASE("engine properties on random graphs") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> kdist(-10, 10);
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto g = oracle::random_graph(rng, n, 0.4);
        const auto c = oracle::random_config(rng, n, -6, 6);
        const auto next = fire(g, c);

        CHECK(next.total() == c.total());
        CHECK(next == fire_reference(g, c));
        CHECK(oracle::as_ll(next) == oracle::fire(oracle::matrix_of(g), oracle::as_ll(c)));

        const int k = kdist(rng);
        CHECK(fire(g, shift(c, k)) == shift(next, k));
        CHECK(induced_orientation(g, shift(c, k)) == induced_orientation(g, c));

        const auto r = induced_orientation(g, c);
        const auto edges = g.edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto a = c[edges[i].u];
            const auto b = c[edges[i].v];
            CHECK((r[i] == EdgeDir::to_higher) == (a > b));
            CHECK((r[i] == EdgeDir::flat) == (a == b));
        }
        if (auto pre = zero_preposition_from_orientation(g, r)) {
            CHECK(is_zero_configuration(fire(g, *pre)));
            CHECK(induced_orientation(g, *pre) == r);
        }

        auto result = run(g, c);
        REQUIRE(std::holds_alternative<PeriodReport>(result));
        const auto& rep = std::get<PeriodReport>(result);
        CHECK((rep.period == 1 || rep.period == 2));
        for (int i = 0; i < rep.period; ++i) {
            CHECK(fire(g, rep.period_configs[static_cast<std::size_t>(i)]) ==
                  rep.period_configs[static_cast<std::size_t>((i + 1) % rep.period)]);
        }
        // Least preperiod: C_{N-1} is outside the cycle.
        const auto seq = trace(g, c, rep.preperiod + rep.period);
        CHECK(seq[static_cast<std::size_t>(rep.preperiod)] == rep.period_configs.front());
        if (rep.preperiod > 0) {
            CHECK(seq[static_cast<std::size_t>(rep.preperiod - 1)] !=
                  seq[static_cast<std::size_t>(rep.preperiod - 1 + rep.period)]);
        }
    }
}

TEST_CASE("zero-prepositions are unique per orientation on small graphs") {
    // Enumerate every configuration with stacks in [-maxdeg, maxdeg] and keep
    // the ones that fire to zero; no orientation may collect two of them, and
    // each must be the reconstructed candidate.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + trial % 4;
        const auto g = trial == 0 ? path(5) : oracle::random_graph(rng, n, 0.6);
        const int d = g.max_degree();
        const int width = 2 * d + 1;
        long long total = 1;
        for (int i = 0; i < g.order(); ++i) total *= width;

        std::map<Orientation, Configuration> seen;
        Configuration c = Configuration::zeros(g.order());
        for (long long code = 0; code < total; ++code) {
            long long x = code;
            for (int v = 0; v < g.order(); ++v) {
                c[v] = x % width - d;
                x /= width;
            }
            if (!is_zero_configuration(fire(g, c))) continue;
            const auto r = induced_orientation(g, c);
            CHECK(seen.emplace(r, c).second);
            auto rebuilt = zero_preposition_from_orientation(g, r);
            REQUIRE(rebuilt);
            CHECK(*rebuilt == c);
        }
        CHECK(!seen.empty());  // the 0-configuration itself
    }
}
