#ifndef RSHWC_OBJECTIVE_HPP_
#define RSHWC_OBJECTIVE_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "rshwc/network.hpp"

namespace rshwc {

class EmptySetError : public std::domain_error {
 public:
  EmptySetError() : std::domain_error("average collaboration of an empty set") {}
};

/// Total collaboration T(V*) = α(V*)·|V*|: onsite score on edges with both
/// endpoints onsite, remote score on every other edge.
double total_collaboration(const TwoLayerNetwork& network,
                           std::span<const VertexId> onsite);

/// Average collaboration α(V*). Throws EmptySetError for an empty set.
double alpha(const TwoLayerNetwork& network, std::span<const VertexId> onsite);

/// Collaboration gain τ_U(v) = Σ_{u ∈ U ∩ N_p(v)} (o − r).
double tau(const TwoLayerNetwork& network, std::span<const VertexId> set,
           VertexId v);

/// Incremental bookkeeping for an onsite set.
///
/// Invariants: total = total_remote + Σ_{e ⊆ V*} (o(e) − r(e)), and
/// gain(v) = τ_{V*}(v) for every vertex, onsite or not. A move costs
/// O(|V| + Σ deg_p(w)) over the partnership neighbours w of the moved vertex.
class CollabState {
 public:
  CollabState() = default;
  explicit CollabState(const TwoLayerNetwork& network);
  CollabState(const TwoLayerNetwork& network, std::span<const VertexId> onsite);

  void add(VertexId v);
  void remove(VertexId v);
  void swap(VertexId out, VertexId in);

  bool contains(VertexId v) const { return onsite_[v] != 0; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  double total() const { return total_; }
  double base_remote() const { return base_remote_; }
  double gain(VertexId v) const { return gains_[v]; }
  const std::vector<double>& gains() const { return gains_; }
  /// α of the current set; throws EmptySetError when empty.
  double alpha() const;

  VertexSet members() const;
  const TwoLayerNetwork& network() const { return *network_; }

 private:
  void refresh_neighbors(VertexId v);
  double tau_of(VertexId v) const;

  const TwoLayerNetwork* network_ = nullptr;
  std::vector<char> onsite_;
  std::vector<double> gains_;
  std::size_t size_ = 0;
  double base_remote_ = 0.0;
  double total_ = 0.0;
};

}  // namespace rshwc

#endif  // RSHWC_OBJECTIVE_HPP_
