#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diffusion/graph.hpp"
#include "diffusion/quiescence.hpp"

namespace diffusion {

/// Largest order accepted by count_zero2_subsets (2^n subsets are visited).
inline constexpr int kMaxExhaustiveOrder = 30;

/// Number of 0_2-invoking subsets, decided by the CCD predicate.
/// Throws std::invalid_argument when n > kMaxExhaustiveOrder.
std::uint64_t count_zero2_subsets(const Graph& g, bool include_trivial, int threads = 1);

/// Same count decided by simulation; test-time oracle for the CCD route.
std::uint64_t count_zero2_subsets_dynamic(const Graph& g, bool include_trivial);

int domination_number(const Graph& g);

/// A subset that is 0-invoking but not 0_2-invoking.
struct SearchWitness {
    Graph graph;
    VertexSet subset;
    int zero_step = 0;
    std::string note;
};

struct NotFound {};

/// Some subset hit the step cap and no witness was found.
struct Inconclusive {
    std::vector<VertexSet> capped;
};

using SearchOutcome = std::variant<SearchWitness, NotFound, Inconclusive>;

/// Scans nonempty proper subsets in ascending mask order; returns the first
/// witness.
SearchOutcome find_zero_not_zero2(const Graph& g, int max_steps = kDefaultMaxSteps, int threads = 1);

/// Re-checks a witness by plain step-by-step simulation through the
/// adjacency-list engine.
bool verify_witness(const SearchWitness& w);

struct GraphSearchOptions {
    int n = 0;
    bool connected_only = false;
    /// Skip labelled graphs whose degree sequence is not non-increasing by
    /// label. Every isomorphism class keeps at least one representative.
    bool degree_sorted_only = false;
    int max_steps = kDefaultMaxSteps;
    int threads = 1;
    /// First edge mask to scan (resume point).
    std::uint64_t start_mask = 0;
    /// Checkpoint file; empty disables checkpointing.
    std::string checkpoint_path;
    std::uint64_t checkpoint_every = std::uint64_t{1} << 16;
};

struct GraphSearchEvent {
    enum class Kind { witness, inconclusive, progress };
    Kind kind = Kind::progress;
    std::uint64_t edge_mask = 0;
    std::optional<SearchWitness> witness;
    std::vector<VertexSet> capped;
    std::uint64_t graphs_scanned = 0;
};

struct GraphSearchSummary {
    int n = 0;
    std::uint64_t masks_visited = 0;
    std::uint64_t graphs_scanned = 0;
    std::uint64_t witnesses = 0;
    std::uint64_t inconclusive = 0;
    /// Next unscanned edge mask; equals 2^C(n,2) when the search completed.
    std::uint64_t next_mask = 0;
    bool completed = false;
};

/// Reporter receives events in ascending edge-mask order. Returning false
/// stops the search at the next mask boundary; the checkpoint then records
/// the first unscanned mask.
using GraphSearchReporter = std::function<bool(const GraphSearchEvent&)>;

/// Runs find_zero_not_zero2 on every labelled graph with n <= 7 vertices.
GraphSearchSummary search_all_graphs(const GraphSearchOptions& opts, const GraphSearchReporter& reporter,
                                     const std::atomic<bool>* stop = nullptr);

/// Last "n edge_mask" line of a checkpoint file. Throws ParseError on a
/// malformed file or an order mismatch.
std::uint64_t read_checkpoint(const std::string& path, int n);

}  // namespace diffusion
