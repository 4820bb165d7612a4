#pragma once

#include <optional>

#include "diffusion/engine.hpp"
#include "diffusion/graph.hpp"

namespace diffusion {

// Step numbering follows the perturbation convention: the 0-configuration is
// step 0, the perturbed configuration is step 1, and each Diffusion firing
// after that advances one step. A 0_2-invoking subset therefore restores the
// 0-configuration at step 2.

/// Configuration after every vertex of h sends one chip to each neighbour,
/// starting from the 0-configuration.
Configuration perturb(const Graph& g, const VertexSet& h);

bool is_ccd(const Graph& g, const VertexSet& h);

/// Decided by simulation (perturb, then one firing), never through CCD.
bool is_zero2_invoking(const Graph& g, const VertexSet& h);

struct ZeroInvokingOutcome {
    enum class Status { reached_zero, period_without_zero, cap_exceeded };

    Status status = Status::reached_zero;
    /// For reached_zero: first step holding the 0-configuration. 0 means the
    /// perturbation itself moved no chips (h empty, h = V, or a union of
    /// whole components).
    int step = 0;
    std::optional<PeriodReport> period;
    /// Firings simulated after the perturbation.
    int trace_len = 0;

    bool reached_zero() const { return status == Status::reached_zero; }
};

const char* to_string(ZeroInvokingOutcome::Status s);

ZeroInvokingOutcome is_zero_invoking(const Graph& g, const VertexSet& h, int max_steps = kDefaultMaxSteps);

struct QuiescentNumber {
    enum class Status { found, none, unknown };

    Status status = Status::none;
    /// The minimum when found; for unknown, the smallest witness size seen,
    /// or 0 if none was seen.
    int size = 0;
};

struct EnumerationOptions {
    int threads = 1;
    int max_steps = kDefaultMaxSteps;
};

/// Smallest nonempty 0_2-invoking subset size. n <= 63.
std::optional<int> pq2(const Graph& g, const EnumerationOptions& opts = {});

/// Smallest nonempty 0-invoking subset size. Unknown when a smaller subset's
/// simulation hit the step cap.
QuiescentNumber pq(const Graph& g, const EnumerationOptions& opts = {});

}  // namespace diffusion
