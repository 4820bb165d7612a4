#include "diffusion/engine.hpp"

#include <algorithm>

#include "diffusion/simd/kernels.hpp"

namespace diffusion {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError("stack size overflow: " + std::to_string(a) + " + " + std::to_string(b));
    }
    return out;
}

void require_match(const Graph& g, const Configuration& c) {
    if (c.size() != g.order()) {
        throw std::invalid_argument("configuration has " + std::to_string(c.size()) + " stacks but the graph has " +
                                    std::to_string(g.order()) + " vertices");
    }
}

}  // namespace

std::int64_t Configuration::total() const {
    std::int64_t sum = 0;
    for (auto s : stacks_) sum = checked_add(sum, s);
    return sum;
}

Configuration fire_reference(const Graph& g, const Configuration& c) {
    require_match(g, c);
    Configuration next = c;
    for (int v = 0; v < g.order(); ++v) {
        std::int64_t d = 0;
        for (int u : g.neighbors(v)) d += (c[u] > c[v]) - (c[u] < c[v]);
        next[v] = checked_add(c[v], d);
    }
    return next;
}

Configuration fire(const Graph& g, const Configuration& c) {
    if (!g.has_masks()) return fire_reference(g, c);
    require_match(g, c);
    const int n = g.order();
    std::int32_t delta[64];
    simd::active_kernels().fire_deltas(g.mask_rows(), n, c.stacks(), std::span<std::int32_t>(delta, static_cast<std::size_t>(n)));
    Configuration next = c;
    for (int v = 0; v < n; ++v) next[v] = checked_add(c[v], delta[v]);
    return next;
}

Orientation induced_orientation(const Graph& g, const Configuration& c) {
    require_match(g, c);
    Orientation r;
    r.reserve(static_cast<std::size_t>(g.size()));
    for (const auto& e : g.edges()) {
        if (c[e.u] > c[e.v]) {
            r.push_back(EdgeDir::to_higher);
        } else if (c[e.u] < c[e.v]) {
            r.push_back(EdgeDir::to_lower);
        } else {
            r.push_back(EdgeDir::flat);
        }
    }
    return r;
}

RunResult run(const Graph& g, const Configuration& c0, int max_steps) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    require_match(g, c0);

    // Period is 1 or 2, so C_{k-2}, C_{k-1} and C_k are the only history
    // needed. The first k with C_k = C_{k-1} or C_k = C_{k-2} gives the least
    // preperiod directly.
    Configuration before;  // C_{k-2}
    Configuration current = c0;
    for (int k = 1; k <= max_steps; ++k) {
        Configuration next = fire(g, current);
        if (next == current) {
            PeriodReport rep;
            rep.preperiod = k - 1;
            rep.period = 1;
            rep.period_configs.push_back(std::move(current));
            rep.steps_taken = k;
            return rep;
        }
        if (k >= 2 && next == before) {
            PeriodReport rep;
            rep.preperiod = k - 2;
            rep.period = 2;
            rep.period_configs.push_back(std::move(before));
            rep.period_configs.push_back(std::move(current));
            rep.steps_taken = k;
            return rep;
        }
        before = std::move(current);
        current = std::move(next);
    }
    CapExceeded cap;
    cap.steps_taken = max_steps;
    cap.tail.push_back(std::move(before));
    cap.tail.push_back(std::move(current));
    return cap;
}

Configuration shift(const Configuration& c, std::int64_t k) {
    Configuration out = c;
    for (int v = 0; v < out.size(); ++v) out[v] = checked_add(out[v], k);
    return out;
}

std::optional<Configuration> zero_preposition_from_orientation(const Graph& g, const Orientation& r) {
    if (static_cast<int>(r.size()) != g.size()) {
        throw std::invalid_argument("orientation has " + std::to_string(r.size()) + " entries but the graph has " +
                                    std::to_string(g.size()) + " edges");
    }
    Configuration candidate = Configuration::zeros(g.order());
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (r[i] == EdgeDir::to_higher) {
            ++candidate[e.u];
            --candidate[e.v];
        } else if (r[i] == EdgeDir::to_lower) {
            ++candidate[e.v];
            --candidate[e.u];
        }
    }
    if (induced_orientation(g, candidate) != r) return std::nullopt;
    return candidate;
}

bool is_zero_configuration(const Configuration& c) {
    const auto s = c.stacks();
    return std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; });
}

std::vector<Configuration> trace(const Graph& g, const Configuration& c0, int t_max) {
    if (t_max < 0) throw std::invalid_argument("t_max must be >= 0");
    require_match(g, c0);
    std::vector<Configuration> out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    out.push_back(c0);
    for (int t = 0; t < t_max; ++t) out.push_back(fire(g, out.back()));
    return out;
}

}  // namespace diffusion
