#include "diffusion/quiescence.hpp"

#include <atomic>
#include <bit>

#include "subsets.hpp"

namespace diffusion {

namespace {

void require_masks(const Graph& g, const VertexSet& h) {
    if (!g.has_masks()) {
        throw std::invalid_argument("perturbation subsets need a graph with at most 63 vertices");
    }
    if (h.universe() != g.order()) {
        throw std::invalid_argument("subset universe " + std::to_string(h.universe()) + " does not match graph order " +
                                    std::to_string(g.order()));
    }
}

enum class SubsetVerdict { no, yes, capped };

// Visits every k-subset of an n-set, split across threads. Stops early once
// any subset answers yes. Returns {any yes, any capped}.
template <typename Pred>
std::pair<bool, bool> scan_size(int n, int k, int threads, Pred&& pred) {
    std::atomic<bool> found{false};
    std::atomic<bool> capped{false};
    const std::uint64_t total = detail::binomial(n, k);
    detail::parallel_ranges(total, threads, [&](std::uint64_t begin, std::uint64_t end) {
        if (begin >= end) return;
        std::uint64_t mask = detail::unrank_combination(begin, k);
        for (std::uint64_t r = begin; r < end; ++r, mask = detail::next_combination(mask)) {
            if ((r & 0xFF) == 0 && found.load(std::memory_order_relaxed)) return;
            switch (pred(mask)) {
                case SubsetVerdict::yes:
                    found.store(true, std::memory_order_relaxed);
                    return;
                case SubsetVerdict::capped:
                    capped.store(true, std::memory_order_relaxed);
                    break;
                case SubsetVerdict::no:
                    break;
            }
        }
    });
    return {found.load(), capped.load()};
}

}  // namespace

Configuration perturb(const Graph& g, const VertexSet& h) {
    require_masks(g, h);
    const int n = g.order();
    std::int32_t inside[64];
    simd::active_kernels().neighbor_counts(g.mask_rows(), n, h.bits(), std::span<std::int32_t>(inside, static_cast<std::size_t>(n)));
    Configuration c = Configuration::zeros(n);
    for (int v = 0; v < n; ++v) c[v] = inside[v] - (h.contains(v) ? g.degree(v) : 0);
    return c;
}

bool is_ccd(const Graph& g, const VertexSet& h) {
    require_masks(g, h);
    return simd::active_kernels().is_ccd(g.mask_rows(), g.order(), h.bits());
}

bool is_zero2_invoking(const Graph& g, const VertexSet& h) {
    require_masks(g, h);
    return detail::zero2_masks(simd::active_kernels(), g.mask_rows(), g.order(), h.bits());
}

const char* to_string(ZeroInvokingOutcome::Status s) {
    switch (s) {
        case ZeroInvokingOutcome::Status::reached_zero:
            return "reached_zero";
        case ZeroInvokingOutcome::Status::period_without_zero:
            return "period_without_zero";
        case ZeroInvokingOutcome::Status::cap_exceeded:
            return "cap_exceeded";
    }
    return "unknown";
}

ZeroInvokingOutcome is_zero_invoking(const Graph& g, const VertexSet& h, int max_steps) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    ZeroInvokingOutcome out;
    const Configuration start = perturb(g, h);
    if (is_zero_configuration(start)) {
        out.status = ZeroInvokingOutcome::Status::reached_zero;
        out.step = 0;
        return out;
    }
    // The 0-configuration is a fixed point, so zero occurs somewhere iff the
    // run ends in the period-1 cycle at zero. Run index i is step i + 1.
    auto result = run(g, start, max_steps);
    if (auto* cap = std::get_if<CapExceeded>(&result)) {
        out.status = ZeroInvokingOutcome::Status::cap_exceeded;
        out.trace_len = cap->steps_taken;
        return out;
    }
    auto& rep = std::get<PeriodReport>(result);
    out.trace_len = rep.steps_taken;
    if (rep.period == 1 && is_zero_configuration(rep.period_configs.front())) {
        out.status = ZeroInvokingOutcome::Status::reached_zero;
        out.step = rep.preperiod + 1;
    } else {
        out.status = ZeroInvokingOutcome::Status::period_without_zero;
    }
    out.period = std::move(rep);
    return out;
}

std::optional<int> pq2(const Graph& g, const EnumerationOptions& opts) {
    require_masks(g, VertexSet::empty(g.order()));
    const int n = g.order();
    const auto& kernels = simd::active_kernels();
    const auto& adj = g.mask_rows();
    for (int k = 1; k <= n; ++k) {
        auto [found, capped] = scan_size(n, k, opts.threads, [&](std::uint64_t h) {
            return detail::zero2_masks(kernels, adj, n, h) ? SubsetVerdict::yes : SubsetVerdict::no;
        });
        if (found) return k;
    }
    return std::nullopt;
}

QuiescentNumber pq(const Graph& g, const EnumerationOptions& opts) {
    require_masks(g, VertexSet::empty(g.order()));
    const int n = g.order();
    bool capped_below = false;
    for (int k = 1; k <= n; ++k) {
        auto [found, capped] = scan_size(n, k, opts.threads, [&](std::uint64_t h) {
            auto outcome = is_zero_invoking(g, VertexSet(n, h), opts.max_steps);
            switch (outcome.status) {
                case ZeroInvokingOutcome::Status::reached_zero:
                    return SubsetVerdict::yes;
                case ZeroInvokingOutcome::Status::cap_exceeded:
                    return SubsetVerdict::capped;
                case ZeroInvokingOutcome::Status::period_without_zero:
                    break;
            }
            return SubsetVerdict::no;
        });
        if (found) {
            if (capped_below) return {QuiescentNumber::Status::unknown, k};
            return {QuiescentNumber::Status::found, k};
        }
        capped_below = capped_below || capped;
    }
    return {capped_below ? QuiescentNumber::Status::unknown : QuiescentNumber::Status::none, 0};
}

}  // namespace diffusion
