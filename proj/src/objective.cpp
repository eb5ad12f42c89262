#include "rshwc/objective.hpp"

namespace rshwc {

double total_collaboration(const TwoLayerNetwork& network,
                           std::span<const VertexId> onsite) {
  const auto in = membership_mask(network.vertex_count(), onsite);
  double both = 0.0, other = 0.0;
  for (const PartnershipEdge& e : network.partnership_edges()) {
    if (in[e.u] && in[e.v]) {
      both += e.onsite;
    } else {
      other += e.remote;
    }
  }
  return both + other;
}

double alpha(const TwoLayerNetwork& network, std::span<const VertexId> onsite) {
  if (onsite.empty()) throw EmptySetError();
  return total_collaboration(network, onsite) /
         static_cast<double>(onsite.size());
}

double tau(const TwoLayerNetwork& network, std::span<const VertexId> set,
           VertexId v) {
  const auto in = membership_mask(network.vertex_count(), set);
  double sum = 0.0;
  for (const Incidence& inc : network.partnership_neighbors(v)) {
    if (inc.neighbor == v || !in[inc.neighbor]) continue;
    const PartnershipEdge& e = network.partnership_edges()[inc.edge];
    sum += e.onsite - e.remote;
  }
  return sum;
}

CollabState::CollabState(const TwoLayerNetwork& network)
    : network_(&network),
      onsite_(network.vertex_count(), 0),
      gains_(network.vertex_count(), 0.0),
      base_remote_(network.total_remote()),
      total_(network.total_remote()) {}

CollabState::CollabState(const TwoLayerNetwork& network,
                         std::span<const VertexId> onsite)
    : CollabState(network) {
  for (VertexId v : onsite) add(v);
}

void CollabState::add(VertexId v) {
  if (onsite_[v]) throw std::logic_error("vertex already onsite");
  onsite_[v] = 1;
  ++size_;
  refresh_neighbors(v);
}

void CollabState::remove(VertexId v) {
  if (!onsite_[v]) throw std::logic_error("vertex not onsite");
  onsite_[v] = 0;
  --size_;
  refresh_neighbors(v);
}

// Gains are re-summed in adjacency order and the total in id order, so the
// state depends only on the current set, not on the moves that built it.
// Accumulated add/subtract rounding would otherwise break exact ties.
void CollabState::refresh_neighbors(VertexId v) {
  for (const Incidence& inc : network_->partnership_neighbors(v)) {
    if (inc.neighbor == v) continue;
    gains_[inc.neighbor] = tau_of(inc.neighbor);
  }
  double twice = 0.0;
  for (VertexId u = 0; u < onsite_.size(); ++u) {
    if (onsite_[u]) twice += gains_[u];
  }
  total_ = base_remote_ + 0.5 * twice;
}

double CollabState::tau_of(VertexId v) const {
  double sum = 0.0;
  for (const Incidence& inc : network_->partnership_neighbors(v)) {
    if (inc.neighbor == v || !onsite_[inc.neighbor]) continue;
    const PartnershipEdge& e = network_->partnership_edges()[inc.edge];
    sum += e.onsite - e.remote;
  }
  return sum;
}

void CollabState::swap(VertexId out, VertexId in) {
  if (!onsite_[out] || onsite_[in]) {
    throw std::logic_error("swap needs an onsite and an offsite vertex");
  }
  remove(out);
  add(in);
}

double CollabState::alpha() const {
  if (size_ == 0) throw EmptySetError();
  return total_ / static_cast<double>(size_);
}

VertexSet CollabState::members() const {
  VertexSet out;
  out.reserve(size_);
  for (VertexId v = 0; v < onsite_.size(); ++v) {
    if (onsite_[v]) out.push_back(v);
  }
  return out;
}

}  // namespace rshwc
