#include "diffusion/enumeration.hpp"

#include <bit>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "diffusion/engine.hpp"
#include "subsets.hpp"

namespace diffusion {

namespace {

void require_exhaustive(const Graph& g) {
    if (g.order() > kMaxExhaustiveOrder) {
        throw std::invalid_argument("exhaustive subset enumeration supports at most " +
                                    std::to_string(kMaxExhaustiveOrder) + " vertices, got " + std::to_string(g.order()));
    }
}

std::uint64_t trivial_count(int n) { return n == 0 ? 1 : 2; }

bool degrees_non_increasing(const Graph& g) {
    for (int v = 1; v < g.order(); ++v) {
        if (g.degree(v) > g.degree(v - 1)) return false;
    }
    return true;
}

// Perturbation by adjacency lists, independent of the bitmask kernels.
Configuration perturb_by_lists(const Graph& g, const VertexSet& h) {
    Configuration c = Configuration::zeros(g.order());
    for (int v : h.members()) {
        for (int u : g.neighbors(v)) {
            --c[v];
            ++c[u];
        }
    }
    return c;
}

}  // namespace

std::uint64_t count_zero2_subsets(const Graph& g, bool include_trivial, int threads) {
    require_exhaustive(g);
    const int n = g.order();
    const auto& kernels = simd::active_kernels();
    const auto& adj = g.mask_rows();
    std::atomic<std::uint64_t> total{0};
    detail::parallel_ranges(std::uint64_t{1} << n, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local = 0;
        for (std::uint64_t h = begin; h < end; ++h) local += kernels.is_ccd(adj, n, h) ? 1 : 0;
        total.fetch_add(local, std::memory_order_relaxed);
    });
    const std::uint64_t count = total.load();
    return include_trivial ? count : count - trivial_count(n);
}

std::uint64_t count_zero2_subsets_dynamic(const Graph& g, bool include_trivial) {
    require_exhaustive(g);
    const int n = g.order();
    std::uint64_t count = 0;
    for (std::uint64_t h = 0; h < (std::uint64_t{1} << n); ++h) {
        count += is_zero2_invoking(g, VertexSet(n, h)) ? 1 : 0;
    }
    return include_trivial ? count : count - trivial_count(n);
}

int domination_number(const Graph& g) {
    const int n = g.order();
    if (!g.has_masks()) throw std::invalid_argument("domination_number supports at most 63 vertices");
    if (n == 0) return 0;
    const auto& kernels = simd::active_kernels();
    const auto& adj = g.mask_rows();
    for (int k = 1; k < n; ++k) {
        std::uint64_t mask = detail::unrank_combination(0, k);
        const std::uint64_t total = detail::binomial(n, k);
        for (std::uint64_t r = 0; r < total; ++r, mask = detail::next_combination(mask)) {
            if (kernels.is_dominating(adj, n, mask)) return k;
        }
    }
    return n;
}

SearchOutcome find_zero_not_zero2(const Graph& g, int max_steps, int threads) {
    if (!g.has_masks()) throw std::invalid_argument("find_zero_not_zero2 supports at most 63 vertices");
    const int n = g.order();
    if (n < 2) return NotFound{};
    const auto& kernels = simd::active_kernels();
    const auto& adj = g.mask_rows();
    // Proper nonempty subsets are masks 1 .. 2^n - 2.
    const std::uint64_t count = (std::uint64_t{1} << n) - 2;

    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::mutex mu;
    std::map<std::uint64_t, std::vector<std::uint64_t>> capped_by_range;
    std::map<std::uint64_t, int> step_by_mask;

    detail::parallel_ranges(count, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> capped;
        for (std::uint64_t h = begin + 1; h < end + 1; ++h) {
            if (h > best.load(std::memory_order_relaxed)) break;
            if (detail::zero2_masks(kernels, adj, n, h)) continue;
            auto outcome = is_zero_invoking(g, VertexSet(n, h), max_steps);
            if (outcome.status == ZeroInvokingOutcome::Status::cap_exceeded) {
                capped.push_back(h);
            } else if (outcome.reached_zero()) {
                std::lock_guard lock(mu);
                step_by_mask[h] = outcome.step;
                auto cur = best.load();
                while (h < cur && !best.compare_exchange_weak(cur, h)) {
                }
                break;
            }
        }
        std::lock_guard lock(mu);
        capped_by_range[begin] = std::move(capped);
    });

    const std::uint64_t w = best.load();
    if (w != std::numeric_limits<std::uint64_t>::max()) {
        SearchWitness witness{g, VertexSet(n, w), step_by_mask.at(w), {}};
        witness.note = "perturbation reaches the 0-configuration at step " + std::to_string(witness.zero_step) +
                       " but the step-2 configuration is nonzero";
        return witness;
    }
    Inconclusive inc;
    for (auto& [begin, masks] : capped_by_range) {
        for (auto h : masks) inc.capped.emplace_back(n, h);
    }
    if (!inc.capped.empty()) return inc;
    return NotFound{};
}

bool verify_witness(const SearchWitness& w) {
    const Graph& g = w.graph;
    if (w.subset.universe() != g.order() || w.zero_step < 3) return false;
    Configuration c = perturb_by_lists(g, w.subset);  // step 1
    for (int step = 1; step < w.zero_step; ++step) {
        if (is_zero_configuration(c)) return false;
        c = fire_reference(g, c);
    }
    return is_zero_configuration(c);
}

GraphSearchSummary search_all_graphs(const GraphSearchOptions& opts, const GraphSearchReporter& reporter,
                                     const std::atomic<bool>* stop) {
    if (opts.n < 0 || opts.n > 7) throw std::invalid_argument("search_all_graphs supports 0 <= n <= 7");
    const int pairs = opts.n * (opts.n - 1) / 2;
    const std::uint64_t total = std::uint64_t{1} << pairs;
    if (opts.start_mask > total) throw std::invalid_argument("resume mask lies beyond the edge-mask space");

    GraphSearchSummary summary;
    summary.n = opts.n;
    summary.next_mask = opts.start_mask;

    std::ofstream checkpoint;
    if (!opts.checkpoint_path.empty()) {
        checkpoint.open(opts.checkpoint_path, std::ios::app);
        if (!checkpoint) throw std::runtime_error("cannot open checkpoint '" + opts.checkpoint_path + "'");
    }
    auto write_checkpoint = [&](std::uint64_t next) {
        if (checkpoint.is_open()) checkpoint << opts.n << ' ' << next << std::endl;
    };

    struct Slot {
        bool scanned = false;
        SearchOutcome outcome = NotFound{};
    };
    const std::uint64_t every = std::max<std::uint64_t>(opts.checkpoint_every, 1);
    const std::uint64_t block = std::min<std::uint64_t>(every, 4096);
    std::vector<Slot> slots;
    std::uint64_t last_checkpoint = opts.start_mask;

    for (std::uint64_t base = opts.start_mask; base < total;) {
        if (stop && stop->load()) break;
        const std::uint64_t end = std::min(total, base + block);
        slots.assign(end - base, Slot{});
        detail::parallel_ranges(end - base, opts.threads, [&](std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i) {
                Graph g = Graph::from_edge_mask(opts.n, base + i);
                if (opts.connected_only && !is_connected(g)) continue;
                if (opts.degree_sorted_only && !degrees_non_increasing(g)) continue;
                slots[i].scanned = true;
                slots[i].outcome = find_zero_not_zero2(g, opts.max_steps, 1);
            }
        });

        for (std::uint64_t i = 0; i < slots.size(); ++i) {
            const std::uint64_t mask = base + i;
            summary.next_mask = mask + 1;
            ++summary.masks_visited;
            if (!slots[i].scanned) continue;
            ++summary.graphs_scanned;
            GraphSearchEvent ev;
            ev.edge_mask = mask;
            ev.graphs_scanned = summary.graphs_scanned;
            if (auto* w = std::get_if<SearchWitness>(&slots[i].outcome)) {
                ++summary.witnesses;
                ev.kind = GraphSearchEvent::Kind::witness;
                ev.witness = *w;
            } else if (auto* inc = std::get_if<Inconclusive>(&slots[i].outcome)) {
                ++summary.inconclusive;
                ev.kind = GraphSearchEvent::Kind::inconclusive;
                ev.capped = inc->capped;
            } else {
                continue;
            }
            if (reporter && !reporter(ev)) {
                write_checkpoint(summary.next_mask);
                return summary;
            }
        }
        base = end;

        if (base - last_checkpoint >= every || base == total) {
            write_checkpoint(base);
            last_checkpoint = base;
            if (reporter) {
                GraphSearchEvent ev;
                ev.kind = GraphSearchEvent::Kind::progress;
                ev.edge_mask = base;
                ev.graphs_scanned = summary.graphs_scanned;
                if (!reporter(ev)) {
                    summary.completed = base == total;
                    return summary;
                }
            }
        }
    }
    summary.completed = summary.next_mask == total;
    if (!summary.completed) write_checkpoint(summary.next_mask);
    return summary;
}

std::uint64_t read_checkpoint(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open checkpoint '" + path + "'");
    std::string line;
    std::string last;
    int line_no = 0;
    int last_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        last = line;
        last_no = line_no;
    }
    if (last.empty()) throw ParseError(path + ": checkpoint is empty");
    std::istringstream ls(last);
    int file_n = -1;
    std::uint64_t mask = 0;
    std::string extra;
    if (!(ls >> file_n >> mask) || (ls >> extra)) {
        throw ParseError(path + ":line " + std::to_string(last_no) + ": expected \"n edge_mask\", got '" + last + "'");
    }
    if (file_n != n) {
        throw ParseError(path + ":line " + std::to_string(last_no) + ": checkpoint is for n=" + std::to_string(file_n) +
                         ", search requested n=" + std::to_string(n));
    }
    return mask;
}

}  // namespace diffusion
