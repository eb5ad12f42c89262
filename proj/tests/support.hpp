// Reference implementations and generators shared by the test binaries.
// Everything here is written from the definitions, without touching the
// library's incremental machinery, so it can serve as an oracle.

#ifndef RSHWC_TESTS_SUPPORT_HPP_
#define RSHWC_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "rshwc/network.hpp"
#include "rshwc/oracle.hpp"

namespace rshwc::testing {

inline std::vector<char> mask_of(std::size_t n, const VertexSet& set) {
  std::vector<char> m(n, 0);
  for (VertexId v : set) m[v] = 1;
  return m;
}

/// Expected infections by summing over every live/blocked assignment of the
/// contact edges inside U.
inline double naive_risk(const TwoLayerNetwork& net, const VertexSet& onsite,
                         const VertexSet& seeds) {
  const std::size_t n = net.vertex_count();
  const auto in_u = mask_of(n, onsite);
  std::vector<ContactEdge> inside;
  for (const ContactEdge& e : net.contact_edges()) {
    if (in_u[e.u] && in_u[e.v]) inside.push_back(e);
  }
  const std::size_t m = inside.size();
  if (m > 22) throw std::logic_error("naive_risk: too many edges");
  double expected = 0.0;
  std::vector<std::vector<VertexId>> adj(n);
  std::vector<char> seen(n);
  std::vector<VertexId> stack;
  for (std::uint64_t live = 0; live < (1ULL << m); ++live) {
    double p = 1.0;
    for (auto& a : adj) a.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (live >> j & 1) {
        p *= inside[j].sigma;
        adj[inside[j].u].push_back(inside[j].v);
        adj[inside[j].v].push_back(inside[j].u);
      } else {
        p *= 1.0 - inside[j].sigma;
      }
    }
    if (p == 0.0) continue;
    std::fill(seen.begin(), seen.end(), 0);
    stack.clear();
    for (VertexId s : seeds) {
      if (in_u[s] && !seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    }
    std::size_t infected = 0;
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      ++infected;
      for (VertexId y : adj[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    expected += p * static_cast<double>(infected);
  }
  return expected;
}

/// The three sums of the average-collaboration numerator, spelled out.
inline double naive_total(const TwoLayerNetwork& net, const VertexSet& onsite) {
  const auto in = mask_of(net.vertex_count(), onsite);
  double both = 0.0, one = 0.0, none = 0.0;
  for (const PartnershipEdge& e : net.partnership_edges()) {
    const int k = in[e.u] + in[e.v];
    if (k == 2) both += e.onsite;
    if (k == 1) one += e.remote;
    if (k == 0) none += e.remote;
  }
  return both + one + none;
}

inline double naive_alpha(const TwoLayerNetwork& net, const VertexSet& onsite) {
  return naive_total(net, onsite) / static_cast<double>(onsite.size());
}

inline double naive_tau(const TwoLayerNetwork& net, const VertexSet& set,
                        VertexId v) {
  double t = 0.0;
  for (const PartnershipEdge& e : net.partnership_edges()) {
    VertexId other;
    if (e.u == v) {
      other = e.v;
    } else if (e.v == v) {
      other = e.u;
    } else {
      continue;
    }
    if (std::binary_search(set.begin(), set.end(), other)) {
      t += e.onsite - e.remote;
    }
  }
  return t;
}

inline bool naive_covers(const TwoLayerNetwork& net, const VertexSet& set,
                         const SkillSet& required) {
  for (SkillId s : required) {
    bool found = false;
    for (VertexId v : set) {
      const auto& sk = net.skills(v);
      if (std::find(sk.begin(), sk.end(), s) != sk.end()) found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Exact cover search over the triples: branch on the lowest uncovered
/// element.
inline bool has_exact_cover(const X3CInstance& x3c) {
  const std::uint32_t ground = 3 * x3c.q;
  std::vector<char> used(ground, 0);
  std::function<bool(std::uint32_t)> go = [&](std::uint32_t covered) {
    if (covered == ground) return true;
    std::uint32_t e = 0;
    while (used[e]) ++e;
    for (const Triple& t : x3c.triples) {
      if (std::find(t.begin(), t.end(), e) == t.end()) continue;
      if (used[t[0]] || used[t[1]] || used[t[2]]) continue;
      for (auto x : t) used[x] = 1;
      if (go(covered + 3)) return true;
      for (auto x : t) used[x] = 0;
    }
    return false;
  };
  return go(0);
}

struct TinyParams {
  std::uint32_t min_vertices = 2;
  std::uint32_t max_vertices = 12;
  std::uint32_t max_contact_edges = 18;
  std::uint32_t max_partnership_edges = 24;
  std::uint32_t universe = 6;
  std::uint32_t max_required = 4;
  std::uint32_t max_seeds = 3;
};

/// Random simple-graph instance with mixed sigma values (0, 1 and interior).
inline ProblemInstance random_tiny_instance(std::mt19937_64& rng,
                                            const TinyParams& p = {}) {
  std::uniform_int_distribution<std::uint32_t> nd(p.min_vertices, p.max_vertices);
  const std::uint32_t n = nd(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  auto pick_edges = [&](std::uint32_t cap) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::uniform_int_distribution<std::size_t> md(
        0, std::min<std::size_t>(cap, pairs.size()));
    return std::vector<std::pair<VertexId, VertexId>>(
        pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(md(rng)));
  };
  std::vector<ContactEdge> contact;
  for (auto [u, v] : pick_edges(p.max_contact_edges)) {
    const double r = unit(rng);
    const double sigma = r < 0.1 ? 0.0 : (r < 0.2 ? 1.0 : unit(rng));
    contact.push_back({u, v, sigma});
  }
  std::vector<PartnershipEdge> partnership;
  for (auto [u, v] : pick_edges(p.max_partnership_edges)) {
    const double o = 2.0 * unit(rng);
    const double r = unit(rng) < 0.8 ? o * unit(rng) : 2.0 * unit(rng);
    partnership.push_back({u, v, o, r});
  }
  std::uniform_int_distribution<std::uint32_t> kd(0, 2);
  std::uniform_int_distribution<SkillId> sd(0, p.universe - 1);
  std::vector<SkillSet> skills(n);
  for (auto& s : skills) {
    for (std::uint32_t k = kd(rng) + (unit(rng) < 0.5 ? 1 : 0); k > 0; --k) {
      s.push_back(sd(rng));
    }
    normalize_set(s);
  }
  ProblemInstance inst;
  inst.network = TwoLayerNetwork(n, p.universe, std::move(contact),
                                 std::move(partnership), std::move(skills));
  std::uniform_int_distribution<std::uint32_t> rd(0, p.max_required);
  for (std::uint32_t k = rd(rng); k > 0; --k) inst.required_skills.push_back(sd(rng));
  normalize_set(inst.required_skills);
  std::uniform_int_distribution<VertexId> vd(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> cd(1, p.max_seeds);
  for (std::uint32_t k = cd(rng); k > 0; --k) inst.seeds.push_back(vd(rng));
  normalize_set(inst.seeds);
  inst.budget = 0.5 + unit(rng) * static_cast<double>(n) / 2.0;
  inst.exchange_cap = 50;
  return inst;
}

/// Exhaustive optimum computed from the naive definitions: maximum α over
/// feasible subsets, or nullopt when none is feasible.
inline std::optional<double> naive_optimum(const ProblemInstance& inst) {
  const std::size_t n = inst.network.vertex_count();
  std::optional<double> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet set;
    for (VertexId v = 0; v < n; ++v) {
      if (mask >> v & 1u) set.push_back(v);
    }
    if (!naive_covers(inst.network, set, inst.required_skills)) continue;
    const double a = naive_alpha(inst.network, set);
    if (best && a <= *best) continue;
    if (naive_risk(inst.network, set, inst.seeds) > inst.budget + 1e-12) continue;
    best = a;
  }
  return best;
}

}  // namespace rshwc::testing

#endif  // RSHWC_TESTS_SUPPORT_HPP_
