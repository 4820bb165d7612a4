#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "diffusion/graph.hpp"

namespace diffusion {

/// Raised when a stack would leave the int64 range. Never wraps.
class OverflowError : public std::overflow_error {
  public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Integer stack size per vertex. Stacks may be negative (debt).
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(std::vector<std::int64_t> stacks) : stacks_(std::move(stacks)) {}
    Configuration(std::initializer_list<std::int64_t> stacks) : stacks_(stacks) {}

    static Configuration zeros(int n) { return Configuration(std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)); }

    int size() const { return static_cast<int>(stacks_.size()); }
    std::int64_t operator[](int v) const { return stacks_[static_cast<std::size_t>(v)]; }
    std::int64_t& operator[](int v) { return stacks_[static_cast<std::size_t>(v)]; }
    std::span<const std::int64_t> stacks() const { return stacks_; }
    std::span<std::int64_t> stacks() { return stacks_; }

    /// Total chips; throws OverflowError if the sum leaves int64.
    std::int64_t total() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

  private:
    std::vector<std::int64_t> stacks_;
};

enum class EdgeDir : std::uint8_t {
    flat,       // equal stacks
    to_higher,  // u -> v for edge {u,v} with u < v
    to_lower,   // v -> u
};

/// One direction per graph edge, indexed like Graph::edges().
using Orientation = std::vector<EdgeDir>;

struct PeriodReport {
    int preperiod = 0;
    int period = 1;
    std::vector<Configuration> period_configs;
    int steps_taken = 0;
};

/// The step cap was reached before the sequence repeated.
struct CapExceeded {
    int steps_taken = 0;
    /// Last configurations simulated, oldest first.
    std::vector<Configuration> tail;
};

using RunResult = std::variant<PeriodReport, CapExceeded>;

inline constexpr int kDefaultMaxSteps = 10'000;

/// One simultaneous Diffusion step: each vertex gains one chip per strictly
/// richer neighbour and loses one per strictly poorer neighbour.
Configuration fire(const Graph& g, const Configuration& c);

/// Adjacency-list implementation of fire, independent of the bitmask kernels.
Configuration fire_reference(const Graph& g, const Configuration& c);

Orientation induced_orientation(const Graph& g, const Configuration& c);

/// Simulates until C_t = C_{t+1} or C_t = C_{t+2}, reporting the least
/// preperiod and the minimum period. At most `max_steps` firings.
RunResult run(const Graph& g, const Configuration& c0, int max_steps = kDefaultMaxSteps);

Configuration shift(const Configuration& c, std::int64_t k);

/// The unique configuration inducing `r` whose next firing is the
/// 0-configuration, if one exists. Candidate stacks are out-degree minus
/// in-degree under `r`.
std::optional<Configuration> zero_preposition_from_orientation(const Graph& g, const Orientation& r);

bool is_zero_configuration(const Configuration& c);

/// [C_0, ..., C_{t_max}].
std::vector<Configuration> trace(const Graph& g, const Configuration& c0, int t_max);

}  // namespace diffusion
