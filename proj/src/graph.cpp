#include "diffusion/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "diffusion/simd/kernels.hpp"

namespace diffusion {

namespace {

void require_masks(const Graph& g, const VertexSet& s) {
    if (!g.has_masks()) {
        throw std::invalid_argument("subset predicates need a graph with at most 63 vertices, got " +
                                    std::to_string(g.order()));
    }
    if (s.universe() != g.order()) {
        throw std::invalid_argument("vertex set universe " + std::to_string(s.universe()) +
                                    " does not match graph order " + std::to_string(g.order()));
    }
}

int parse_int(std::string_view text, const char* what) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<int> parse_int_list(std::string_view text, const char* what) {
    std::vector<int> values;
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        values.push_back(parse_int(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos), what));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return values;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const auto& e : edges_) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    adjacency_.resize(static_cast<std::size_t>(offsets_.back()));
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    // Lexicographic edge order makes every neighbour list come out sorted.
    for (const auto& e : edges_) adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.u)]++)] = e.v;
    for (const auto& e : edges_) adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.v)]++)] = e.u;
    for (int v = 0; v < n; ++v) {
        auto first = adjacency_.begin() + offsets_[static_cast<std::size_t>(v)];
        auto last = adjacency_.begin() + offsets_[static_cast<std::size_t>(v) + 1];
        std::sort(first, last);
    }
    if (has_masks()) {
        for (const auto& e : edges_) {
            masks_[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
            masks_[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
        }
    }
}

Graph Graph::from_edge_list(int n, std::span<const std::pair<int, int>> pairs) {
    if (n < 0) throw ParseError("vertex count must be non-negative, got " + std::to_string(n));
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw ParseError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") has an endpoint outside [0," +
                             std::to_string(n) + ")");
        }
        if (a == b) throw ParseError("self-loop at vertex " + std::to_string(a));
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n, std::move(edges));
}

Graph Graph::from_edge_mask(int n, std::uint64_t edge_mask) {
    if (n < 0 || n > 11) throw std::invalid_argument("edge masks cover at most 11 vertices");
    std::vector<Edge> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++bit) {
            if ((edge_mask >> bit) & 1U) edges.push_back({u, v});
        }
    }
    return Graph(n, std::move(edges));
}

std::span<const int> Graph::neighbors(int v) const {
    auto first = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v)]);
    auto last = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(v) + 1]);
    return std::span<const int>(adjacency_).subspan(first, last - first);
}

int Graph::degree(int v) const {
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
}

int Graph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

bool Graph::adjacent(int u, int v) const {
    if (has_masks()) return (masks_[static_cast<std::size_t>(u)] >> v) & 1U;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::edge_index(int u, int v) const {
    Edge key{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return -1;
    return static_cast<int>(it - edges_.begin());
}

const MaskRows& Graph::mask_rows() const {
    if (!has_masks()) throw std::logic_error("graph with " + std::to_string(n_) + " vertices has no bitmask rows");
    return masks_;
}

std::uint64_t Graph::all_mask() const { return VertexSet::full_bits(n_); }

VertexSet::VertexSet(int n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n < 0 || n > kMaxMaskVertices) {
        throw std::invalid_argument("vertex sets support 0..63 vertices, got " + std::to_string(n));
    }
    if ((bits & ~full_bits(n)) != 0) throw std::invalid_argument("vertex set has members outside [0, n)");
}

VertexSet VertexSet::full(int n) { return VertexSet(n, full_bits(n)); }

VertexSet VertexSet::of(int n, std::span<const int> members) {
    std::uint64_t bits = 0;
    for (int v : members) {
        if (v < 0 || v >= n) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " outside [0," + std::to_string(n) + ")");
        }
        bits |= std::uint64_t{1} << v;
    }
    return VertexSet(n, bits);
}

VertexSet VertexSet::of(int n, std::initializer_list<int> members) {
    return of(n, std::span<const int>(members.begin(), members.size()));
}

int VertexSet::count() const { return std::popcount(bits_); }

std::vector<int> VertexSet::members() const {
    std::vector<int> out;
    for (auto b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
}

Graph path(int n) {
    if (n < 1) throw std::invalid_argument("path needs n >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
    return Graph::from_edge_list(n, pairs);
}

Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < n; ++v) pairs.emplace_back(v, (v + 1) % n);
    return Graph::from_edge_list(n, pairs);
}

Graph complete(int n) {
    if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    return Graph::from_edge_list(n, pairs);
}

Graph complete_bipartite(int a, int b) {
    const int parts[] = {a, b};
    return complete_multipartite(parts);
}

Graph complete_multipartite(std::span<const int> parts) {
    if (parts.empty()) throw std::invalid_argument("multipartite graph needs at least one part");
    std::vector<int> part_of;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw std::invalid_argument("part sizes must be >= 1");
        part_of.insert(part_of.end(), static_cast<std::size_t>(parts[i]), static_cast<int>(i));
    }
    const int n = static_cast<int>(part_of.size());
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[static_cast<std::size_t>(u)] != part_of[static_cast<std::size_t>(v)]) pairs.emplace_back(u, v);
    return Graph::from_edge_list(n, pairs);
}

bool looks_like_generator_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    auto name = spec.substr(0, colon);
    return name == "path" || name == "cycle" || name == "complete" || name == "kbip" || name == "kpartite";
}

Graph from_generator_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || !looks_like_generator_spec(spec)) {
        throw std::invalid_argument("unknown graph generator '" + spec + "'");
    }
    const auto name = spec.substr(0, colon);
    const std::string_view args = std::string_view(spec).substr(colon + 1);
    if (name == "kbip") {
        auto sizes = parse_int_list(args, "part size");
        if (sizes.size() != 2) throw std::invalid_argument("kbip takes two part sizes, e.g. kbip:3,3");
        return complete_bipartite(sizes[0], sizes[1]);
    }
    if (name == "kpartite") return complete_multipartite(parse_int_list(args, "part size"));
    const int n = parse_int(args, "vertex count");
    if (name == "path") return path(n);
    if (name == "cycle") return cycle(n);
    return complete(n);
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("line " + std::to_string(line_no) + ": " + msg);
    };

    if (!next_line()) throw ParseError("line " + std::to_string(line_no) + ": missing header \"n m\"");
    long long n = -1;
    long long m = -1;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra)) throw fail("expected header \"n m\", got '" + line + "'");
    }
    if (n < 0 || m < 0) throw fail("vertex and edge counts must be non-negative");
    if (n > 1'000'000) throw fail("vertex count " + std::to_string(n) + " is too large");

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(std::min<long long>(m, 1'000'000)));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        std::istringstream es(line);
        long long u = 0;
        long long v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) throw fail("expected \"u v\", got '" + line + "'");
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw fail("endpoint out of range [0," + std::to_string(n) + ") in '" + line + "'");
        }
        if (u == v) throw fail("self-loop at vertex " + std::to_string(u));
        pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (next_line()) throw fail("unexpected content after " + std::to_string(m) + " edges: '" + line + "'");
    return Graph::from_edge_list(static_cast<int>(n), pairs);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list '" + path + "'");
    try {
        return read_edge_list(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ":" + e.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.order() << ' ' << g.size() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

bool is_connected(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == n;
}

bool is_dominating(const Graph& g, const VertexSet& s) {
    require_masks(g, s);
    return simd::active_kernels().is_dominating(g.mask_rows(), g.order(), s.bits());
}

bool is_minimal_dominating(const Graph& g, const VertexSet& s) {
    if (!is_dominating(g, s)) return false;
    for (int v : s.members()) {
        if (is_dominating(g, s.without(v))) return false;
    }
    return true;
}

bool is_independent(const Graph& g, const VertexSet& s) {
    require_masks(g, s);
    for (int v : s.members()) {
        if (g.neighbor_mask(v) & s.bits()) return false;
    }
    return true;
}

bool is_efficient_dominating(const Graph& g, const VertexSet& s) {
    if (!is_independent(g, s)) return false;
    for (int v = 0; v < g.order(); ++v) {
        if (!s.contains(v) && std::popcount(g.neighbor_mask(v) & s.bits()) != 1) return false;
    }
    return true;
}

int degree_into(const Graph& g, int v, const VertexSet& s) {
    require_masks(g, s);
    if (v < 0 || v >= g.order()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    return std::popcount(g.neighbor_mask(v) & s.bits());
}

std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s) {
    require_masks(g, s);
    std::vector<VertexSet> out;
    std::uint64_t left = s.bits();
    while (left != 0) {
        std::uint64_t comp = left & (~left + 1);
        std::uint64_t frontier = comp;
        while (frontier != 0) {
            std::uint64_t grow = 0;
            for (auto b = frontier; b != 0; b &= b - 1) grow |= g.neighbor_mask(std::countr_zero(b));
            grow &= s.bits() & ~comp;
            comp |= grow;
            frontier = grow;
        }
        out.emplace_back(g.order(), comp);
        left &= ~comp;
    }
    return out;
}

}  // namespace diffusion
