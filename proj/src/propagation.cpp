#include "rshwc/propagation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace rshwc {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool stochastic(double sigma) { return sigma > 0.0 && sigma < 1.0; }

struct Dsu {
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> parent;
};

// Exact expectation over one connected group of super-nodes joined by
// stochastic edges. Branches only on edges crossing the current infection
// frontier; edges the cascade never reaches are marginalized out.
class FrontierEnumerator {
 public:
  struct Edge {
    std::uint32_t a, b;
    double p;
  };

  FrontierEnumerator(std::vector<double> weight, std::vector<Edge> edges)
      : weight_(std::move(weight)), edges_(std::move(edges)) {}

  double expectation(std::uint64_t seeded_mask) {
    acc_ = 0.0;
    recurse(seeded_mask, 0, 1.0);
    return acc_;
  }

 private:
  void recurse(std::uint64_t infected, std::uint32_t decided, double prob) {
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      if (decided & (1u << i)) continue;
      const Edge& e = edges_[i];
      const bool ia = infected >> e.a & 1u;
      const bool ib = infected >> e.b & 1u;
      if (ia == ib) continue;
      const std::uint64_t grown = infected | (1ULL << e.a) | (1ULL << e.b);
      recurse(grown, decided | (1u << i), prob * e.p);
      recurse(infected, decided | (1u << i), prob * (1.0 - e.p));
      return;
    }
    double w = 0.0;
    for (std::uint64_t m = infected; m != 0; m &= m - 1) {
      w += weight_[static_cast<std::size_t>(std::countr_zero(m))];
    }
    acc_ += prob * w;
  }

  std::vector<double> weight_;
  std::vector<Edge> edges_;
  double acc_ = 0.0;
};

}  // namespace

double edge_coin(std::uint64_t seed, std::uint64_t sample, std::uint64_t edge) {
  std::uint64_t h = mix64(seed ^ mix64(sample * 0x632be59bd9b4e019ULL + edge));
  h = mix64(h ^ edge);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::size_t stochastic_edge_count(const TwoLayerNetwork& network,
                                  std::span<const char> in_u) {
  std::size_t count = 0;
  for (const ContactEdge& e : network.contact_edges()) {
    if (in_u[e.u] && in_u[e.v] && e.u != e.v && stochastic(e.sigma)) ++count;
  }
  return count;
}

RiskEstimate risk_exact(const TwoLayerNetwork& network,
                        std::span<const VertexId> population,
                        std::span<const VertexId> seeds,
                        std::size_t exact_threshold) {
  const std::size_t n = network.vertex_count();
  const std::vector<char> in_u = membership_mask(n, population);
  const std::size_t m = stochastic_edge_count(network, in_u);
  if (m > exact_threshold || m > 31) {
    throw TooLargeForExact(std::to_string(m) +
                           " stochastic edges exceed the exact threshold");
  }

  // Contract certain (sigma = 1) edges into super-nodes.
  Dsu certain(n);
  for (const ContactEdge& e : network.contact_edges()) {
    if (in_u[e.u] && in_u[e.v] && e.sigma >= 1.0) certain.unite(e.u, e.v);
  }
  std::unordered_map<std::uint32_t, double> weight;
  std::unordered_map<std::uint32_t, bool> seeded;
  for (VertexId v : population) weight[certain.find(v)] += 1.0;
  for (VertexId v : seeds) {
    if (v < n && in_u[v]) seeded[certain.find(v)] = true;
  }

  // Group super-nodes by stochastic connectivity; merge parallel edges.
  std::unordered_map<std::uint64_t, double> keep_dead;  // (a,b) -> Π(1-σ)
  Dsu groups(n);
  for (const ContactEdge& e : network.contact_edges()) {
    if (!in_u[e.u] || !in_u[e.v] || !stochastic(e.sigma)) continue;
    std::uint32_t a = certain.find(e.u), b = certain.find(e.v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    auto key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, fresh] = keep_dead.try_emplace(key, 1.0);
    it->second *= 1.0 - e.sigma;
    groups.unite(a, b);
  }

  double mean = 0.0;
  // Super-nodes untouched by stochastic edges: infected iff seeded.
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> members;
  for (const auto& [node, w] : weight) {
    members[groups.find(node)].push_back(node);
  }
  std::unordered_map<std::uint32_t, std::vector<FrontierEnumerator::Edge>> group_edges;
  std::unordered_map<std::uint32_t, std::unordered_map<std::uint32_t, std::uint32_t>> local;
  for (auto& [root, nodes] : members) {
    std::sort(nodes.begin(), nodes.end());
    auto& index = local[root];
    for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(keep_dead.size());
  for (const auto& [key, dead] : keep_dead) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t key : keys) {
    auto a = static_cast<std::uint32_t>(key >> 32);
    auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
    std::uint32_t root = groups.find(a);
    auto& index = local[root];
    group_edges[root].push_back({index[a], index[b], 1.0 - keep_dead[key]});
  }

  std::vector<std::uint32_t> roots;
  for (const auto& [root, nodes] : members) roots.push_back(root);
  std::sort(roots.begin(), roots.end());
  for (std::uint32_t root : roots) {
    const auto& nodes = members[root];
    std::uint64_t seed_mask = 0;
    std::vector<double> w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      w[i] = weight[nodes[i]];
      if (seeded.count(nodes[i])) seed_mask |= 1ULL << i;
    }
    if (seed_mask == 0) continue;
    auto edges_it = group_edges.find(root);
    if (edges_it == group_edges.end()) {
      mean += w[0];  // lone seeded super-node
      continue;
    }
    FrontierEnumerator enumerator(std::move(w), edges_it->second);
    mean += enumerator.expectation(seed_mask);
  }
  return {mean, 0.0, 0, true};
}

RiskEstimate summarize_counts(std::span<const std::uint32_t> counts) {
  RiskEstimate est;
  est.samples = counts.size();
  if (counts.empty()) return est;
  double sum = 0.0;
  for (auto c : counts) sum += c;
  est.mean = sum / static_cast<double>(counts.size());
  if (counts.size() > 1) {
    double ss = 0.0;
    for (auto c : counts) ss += (c - est.mean) * (c - est.mean);
    const double var = ss / static_cast<double>(counts.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(counts.size()));
  }
  return est;
}

RiskEstimate risk_mc(const TwoLayerNetwork& network,
                     std::span<const VertexId> population,
                     std::span<const VertexId> seeds,
                     const PropagationConfig& config) {
  const std::size_t n = network.vertex_count();
  ScenarioPool pool(network, std::max<std::size_t>(config.mc_samples, 1),
                    config.rng_seed);
  auto counts = pool.infected_counts(membership_mask(n, population),
                                     membership_mask(n, seeds));
  return summarize_counts(counts);
}

RiskEstimate risk_auto(const TwoLayerNetwork& network,
                       std::span<const VertexId> population,
                       std::span<const VertexId> seeds,
                       const PropagationConfig& config) {
  const auto in_u = membership_mask(network.vertex_count(), population);
  if (stochastic_edge_count(network, in_u) <= config.exact_threshold) {
    return risk_exact(network, population, seeds, config.exact_threshold);
  }
  return risk_mc(network, population, seeds, config);
}

double marginal_risk(const TwoLayerNetwork& network,
                     std::span<const VertexId> onsite,
                     std::span<const VertexId> seeds, VertexId v,
                     const PropagationConfig& config) {
  const std::size_t n = network.vertex_count();
  VertexSet grown(onsite.begin(), onsite.end());
  grown.push_back(v);
  normalize_set(grown);
  const auto in_grown = membership_mask(n, grown);
  if (stochastic_edge_count(network, in_grown) <= config.exact_threshold) {
    const double before =
        risk_exact(network, onsite, seeds, config.exact_threshold).mean;
    const double after =
        risk_exact(network, grown, seeds, config.exact_threshold).mean;
    return std::max(0.0, after - before);
  }
  ScenarioPool pool(network, std::max<std::size_t>(config.mc_samples, 1),
                    config.rng_seed);
  const auto in_s = membership_mask(n, seeds);
  auto before = pool.infected_counts(membership_mask(n, onsite), in_s);
  auto after = pool.infected_counts(in_grown, in_s);
  double diff = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    diff += static_cast<double>(after[k]) - static_cast<double>(before[k]);
  }
  return std::max(0.0, diff / static_cast<double>(before.size()));
}

// ---------------------------------------------------------------------------

ScenarioPool::ScenarioPool(const TwoLayerNetwork& network, std::size_t samples,
                           std::uint64_t seed)
    : n_(network.vertex_count()), samples_(samples) {
  const auto& edges = network.contact_edges();
  offsets_.assign(samples_ * (n_ + 1), 0);
  edge_base_.assign(samples_ + 1, 0);
  std::vector<std::uint32_t> live;
  std::vector<VertexId> scratch;
  for (std::size_t k = 0; k < samples_; ++k) {
    live.clear();
    for (std::uint32_t j = 0; j < edges.size(); ++j) {
      const ContactEdge& e = edges[j];
      if (e.u == e.v || e.sigma <= 0.0) continue;
      if (e.sigma >= 1.0 || edge_coin(seed, k, j) < e.sigma) live.push_back(j);
    }
    std::size_t* off = offsets_.data() + k * (n_ + 1);
    for (std::uint32_t j : live) {
      ++off[edges[j].u + 1];
      ++off[edges[j].v + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) off[v + 1] += off[v];
    edge_base_[k + 1] = edge_base_[k] + off[n_];
    adjacency_.resize(edge_base_[k + 1]);
    VertexId* base = adjacency_.data() + edge_base_[k];
    std::vector<std::size_t> cursor(off, off + n_);
    for (std::uint32_t j : live) {
      base[cursor[edges[j].u]++] = edges[j].v;
      base[cursor[edges[j].v]++] = edges[j].u;
    }
  }
}

std::vector<std::uint32_t> ScenarioPool::infected_counts(
    std::span<const char> in_u, std::span<const char> in_s) const {
  std::vector<std::uint32_t> counts(samples_, 0);
  std::vector<VertexId> initial;
  for (VertexId v = 0; v < n_; ++v) {
    if (in_u[v] && in_s[v]) initial.push_back(v);
  }
  if (initial.empty()) return counts;
  std::vector<std::uint32_t> stamp(n_, 0);
  std::vector<VertexId> queue;
  for (std::size_t k = 0; k < samples_; ++k) {
    const auto mark = static_cast<std::uint32_t>(k + 1);
    queue.assign(initial.begin(), initial.end());
    for (VertexId v : initial) stamp[v] = mark;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : live_neighbors(k, queue[head])) {
        if (in_u[w] && stamp[w] != mark) {
          stamp[w] = mark;
          queue.push_back(w);
        }
      }
    }
    counts[k] = static_cast<std::uint32_t>(queue.size());
  }
  return counts;
}

}  // namespace rshwc
