#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace diffusion {

/// Largest vertex count for which a graph carries bitmask adjacency and
/// vertex subsets can be represented as a single machine word.
inline constexpr int kMaxMaskVertices = 63;

/// Adjacency rows for the bitmask kernels. Rows at or beyond n are zero.
using MaskRows = std::array<std::uint64_t, 64>;

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
    int u;
    int v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class VertexSet;

/// Simple finite undirected graph on vertices 0..n-1.
///
/// Edges are stored once with u < v in lexicographic order; that order is
/// the edge index used by Orientation. Neighbour lists are sorted. When
/// n <= 63 the graph also carries one adjacency bitmask per vertex.
class Graph {
  public:
    Graph() = default;

    /// Builds a graph from unordered pairs. Duplicates (in either direction)
    /// collapse to one edge. Throws ParseError on self-loops or endpoints
    /// outside [0, n).
    static Graph from_edge_list(int n, std::span<const std::pair<int, int>> pairs);

    /// Graph whose edge set is the bits of `edge_mask` in the order
    /// (0,1),(0,2),...,(0,n-1),(1,2),...; requires n <= 11.
    static Graph from_edge_mask(int n, std::uint64_t edge_mask);

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const int> neighbors(int v) const;
    int degree(int v) const;
    int max_degree() const;
    bool adjacent(int u, int v) const;

    /// Index of edge {u,v} in edges(), or -1.
    int edge_index(int u, int v) const;

    bool has_masks() const { return n_ <= kMaxMaskVertices; }
    const MaskRows& mask_rows() const;
    std::uint64_t neighbor_mask(int v) const { return mask_rows()[static_cast<std::size_t>(v)]; }
    std::uint64_t all_mask() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

  private:
    Graph(int n, std::vector<Edge> edges);

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> offsets_{0};  // CSR offsets into adjacency_
    std::vector<int> adjacency_;
    MaskRows masks_{};
};

/// Subset of the vertices of a graph with at most 63 vertices.
class VertexSet {
  public:
    VertexSet() = default;
    VertexSet(int n, std::uint64_t bits);

    static VertexSet empty(int n) { return VertexSet(n, 0); }
    static VertexSet full(int n);
    static VertexSet of(int n, std::span<const int> members);
    static VertexSet of(int n, std::initializer_list<int> members);

    int universe() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    bool contains(int v) const { return v >= 0 && v < n_ && ((bits_ >> v) & 1U) != 0; }
    int count() const;
    bool is_empty() const { return bits_ == 0; }
    bool is_full() const { return bits_ == full_bits(n_); }

    VertexSet complement() const { return VertexSet(n_, ~bits_ & full_bits(n_)); }
    VertexSet without(int v) const { return VertexSet(n_, bits_ & ~(std::uint64_t{1} << v)); }
    std::vector<int> members() const;

    static constexpr std::uint64_t full_bits(int n) {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

  private:
    int n_ = 0;
    std::uint64_t bits_ = 0;
};

// Generators. Path vertices are labelled 0..n-1 along the path.
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph complete_multipartite(std::span<const int> parts);

/// Resolves "path:N", "cycle:N", "complete:N", "kbip:A,B", "kpartite:A,B,...".
/// Throws std::invalid_argument for anything else.
Graph from_generator_spec(const std::string& spec);
bool looks_like_generator_spec(const std::string& spec);

/// Edge-list text: first line "n m", then m lines "u v". Blank lines and
/// lines starting with '#' are skipped. Errors carry the 1-based line number.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

bool is_connected(const Graph& g);

// Domination and subset predicates. The graph must carry masks and the set's
// universe must equal the graph order; std::invalid_argument otherwise.
bool is_dominating(const Graph& g, const VertexSet& s);
bool is_minimal_dominating(const Graph& g, const VertexSet& s);
bool is_efficient_dominating(const Graph& g, const VertexSet& s);
bool is_independent(const Graph& g, const VertexSet& s);
int degree_into(const Graph& g, int v, const VertexSet& s);
std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s);

}  // namespace diffusion
