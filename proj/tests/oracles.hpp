#pragma once

// Brute-force reference implementations used only by the tests. They work on
// a dense adjacency matrix built from the edge list and follow the textbook
// definitions literally, sharing no code with the library's kernels.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "diffusion/engine.hpp"
#include "diffusion/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix matrix_of(const diffusion::Graph& g) {
    Matrix m(static_cast<std::size_t>(g.order()), std::vector<int>(static_cast<std::size_t>(g.order()), 0));
    for (const auto& e : g.edges()) {
        m[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
        m[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
    return m;
}

inline bool in(std::uint64_t set, int v) { return (set >> v) & 1U; }

inline std::vector<long long> fire(const Matrix& m, const std::vector<long long>& c) {
    const auto n = c.size();
    std::vector<long long> next = c;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
            if (m[v][u] && c[u] > c[v]) {
                next[u] -= 1;
                next[v] += 1;
            }
    return next;
}

inline std::vector<long long> perturb(const Matrix& m, std::uint64_t h) {
    const auto n = m.size();
    std::vector<long long> c(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (!in(h, static_cast<int>(v))) continue;
        for (std::size_t u = 0; u < n; ++u)
            if (m[v][u]) {
                c[v] -= 1;
                c[u] += 1;
            }
    }
    return c;
}

inline bool all_zero(const std::vector<long long>& c) {
    for (auto x : c)
        if (x != 0) return false;
    return true;
}

inline bool zero2(const Matrix& m, std::uint64_t h) { return all_zero(fire(m, perturb(m, h))); }

inline int count_into(const Matrix& m, int v, std::uint64_t set, bool inside) {
    int k = 0;
    for (std::size_t u = 0; u < m.size(); ++u)
        if (m[static_cast<std::size_t>(v)][u] && in(set, static_cast<int>(u)) == inside) ++k;
    return k;
}

/// Literal pairwise CCD definition over the edge set.
inline bool ccd(const Matrix& m, std::uint64_t h) {
    const int n = static_cast<int>(m.size());
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (!m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) continue;
            if (in(h, x) != in(h, y)) continue;
            const bool side = in(h, x);
            if (count_into(m, x, h, !side) != count_into(m, y, h, !side)) return false;
        }
    return true;
}

inline bool dominating(const Matrix& m, std::uint64_t s) {
    const int n = static_cast<int>(m.size());
    for (int v = 0; v < n; ++v) {
        if (in(s, v)) continue;
        if (count_into(m, v, s, true) == 0) return false;
    }
    return true;
}

inline int domination_number(const Matrix& m) {
    const int n = static_cast<int>(m.size());
    int best = n;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        int size = 0;
        for (int v = 0; v < n; ++v) size += in(s, v);
        if (size < best && dominating(m, s)) best = size;
    }
    return best;
}

/// Erdos-Renyi G(n, p) on vertices 0..n-1.
inline diffusion::Graph random_graph(std::mt19937_64& rng, int n, double p = 0.5) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) pairs.emplace_back(u, v);
    return diffusion::Graph::from_edge_list(n, pairs);
}

inline diffusion::Configuration random_config(std::mt19937_64& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<std::int64_t> s(static_cast<std::size_t>(n));
    for (auto& x : s) x = d(rng);
    return diffusion::Configuration(std::move(s));
}

inline std::vector<long long> as_ll(const diffusion::Configuration& c) {
    return {c.stacks().begin(), c.stacks().end()};
}

/// The six-vertex graph with no proper nontrivial 0_2-invoking subsets.
inline diffusion::Graph no_proper_zero2_graph() {
    const std::pair<int, int> pairs[] = {{5, 4}, {4, 3}, {4, 2}, {4, 1}, {3, 1}, {3, 0}, {2, 1}, {1, 0}};
    return diffusion::Graph::from_edge_list(6, pairs);
}

}  // namespace oracle
