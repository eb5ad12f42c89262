#ifndef RSHWC_PROPAGATION_HPP_
#define RSHWC_PROPAGATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rshwc/network.hpp"

namespace rshwc {

enum class PropagationModel { kIndependentCascade };

inline constexpr std::size_t kDefaultExactThreshold = 20;

struct PropagationConfig {
  PropagationModel model = PropagationModel::kIndependentCascade;
  std::size_t mc_samples = 200;
  std::uint64_t rng_seed = 1;
  // Largest number of stochastic contact edges (0 < sigma < 1) inside the
  // evaluated subgraph for which exact enumeration is used.
  std::size_t exact_threshold = kDefaultExactThreshold;
};

/// Expected infection count. `samples` is 0 for exact results.
struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  bool exact = false;
};

class TooLargeForExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform draw in [0,1) for (seed, sample, edge); counter-based so any
/// subset of edges can be materialized without disturbing the others.
double edge_coin(std::uint64_t seed, std::uint64_t sample, std::uint64_t edge);

/// Contact edges inside G_c[U] whose probability is strictly between 0 and 1.
std::size_t stochastic_edge_count(const TwoLayerNetwork& network,
                                  std::span<const char> in_u);

RiskEstimate risk_exact(const TwoLayerNetwork& network,
                        std::span<const VertexId> population,
                        std::span<const VertexId> seeds,
                        std::size_t exact_threshold = kDefaultExactThreshold);

RiskEstimate risk_mc(const TwoLayerNetwork& network,
                     std::span<const VertexId> population,
                     std::span<const VertexId> seeds,
                     const PropagationConfig& config);

RiskEstimate risk_auto(const TwoLayerNetwork& network,
                       std::span<const VertexId> population,
                       std::span<const VertexId> seeds,
                       const PropagationConfig& config);

/// risk(V* ∪ {v}) − risk(V*), both terms on the same random scenarios,
/// clamped below at zero. Requires v ∉ V*.
double marginal_risk(const TwoLayerNetwork& network,
                     std::span<const VertexId> onsite,
                     std::span<const VertexId> seeds, VertexId v,
                     const PropagationConfig& config);

/// A fixed pool of live-edge scenarios. Scenario k keeps contact edge j iff
/// edge_coin(seed, k, j) < sigma_j. Reusing one pool across subset queries
/// gives common random numbers: per-scenario infection counts are monotone
/// in both the population and the seed set.
class ScenarioPool {
 public:
  ScenarioPool(const TwoLayerNetwork& network, std::size_t samples,
               std::uint64_t seed);

  std::size_t samples() const { return samples_; }
  std::size_t vertex_count() const { return n_; }

  std::span<const VertexId> live_neighbors(std::size_t sample,
                                           VertexId v) const {
    const std::size_t* off = offsets_.data() + sample * (n_ + 1);
    const VertexId* base = adjacency_.data() + edge_base_[sample];
    return {base + off[v], off[v + 1] - off[v]};
  }

  /// Infected vertices of the population per scenario, seeded by S ∩ U.
  std::vector<std::uint32_t> infected_counts(std::span<const char> in_u,
                                             std::span<const char> in_s) const;

 private:
  std::size_t n_;
  std::size_t samples_;
  std::vector<std::size_t> offsets_;    // samples * (n+1)
  std::vector<std::size_t> edge_base_;  // start of each scenario's adjacency
  std::vector<VertexId> adjacency_;
};

/// Mean and standard error of per-scenario counts.
RiskEstimate summarize_counts(std::span<const std::uint32_t> counts);

}  // namespace rshwc

#endif  // RSHWC_PROPAGATION_HPP_
