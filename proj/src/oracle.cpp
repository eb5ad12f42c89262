#include "rshwc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace rshwc {

SolveResult brute_force_solve(const ProblemInstance& instance,
                              std::size_t exact_threshold) {
  const TwoLayerNetwork& net = instance.network;
  const std::size_t n = net.vertex_count();
  if (n > kBruteForceMaxVertices) {
    throw TooLargeError("brute force is limited to " +
                        std::to_string(kBruteForceMaxVertices) + " vertices");
  }
  if (instance.required_skills.size() > 64) {
    throw TooLargeError("brute force is limited to 64 required skills");
  }
  std::vector<char> all(n, 1);
  if (stochastic_edge_count(net, all) > exact_threshold) {
    throw TooLargeForExact("oracle needs exact risk for every subset");
  }

  std::vector<std::uint64_t> vertex_skills(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < instance.required_skills.size(); ++i) {
      const SkillSet& s = net.skills(v);
      if (std::binary_search(s.begin(), s.end(), instance.required_skills[i])) {
        vertex_skills[v] |= 1ULL << i;
      }
    }
  }
  const std::uint64_t need =
      instance.required_skills.size() == 64
          ? ~0ULL
          : (1ULL << instance.required_skills.size()) - 1;
  std::uint32_t seed_mask = 0;
  for (VertexId v : instance.seeds) seed_mask |= 1u << v;

  const std::uint32_t subsets = 1u << n;
  std::vector<double> total(subsets);
  std::vector<std::uint64_t> cover(subsets, 0);
  total[0] = net.total_remote();
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const auto v = static_cast<VertexId>(std::countr_zero(mask));
    const std::uint32_t rest = mask & (mask - 1);
    double t = total[rest];
    for (const Incidence& inc : net.partnership_neighbors(v)) {
      if (inc.neighbor != v && (rest >> inc.neighbor & 1u)) {
        const PartnershipEdge& e = net.partnership_edges()[inc.edge];
        t += e.onsite - e.remote;
      }
    }
    total[mask] = t;
    cover[mask] = cover[rest] | vertex_skills[v];
    // At least every onsite seed is infected.
    const auto seeded = static_cast<double>(std::popcount(mask & seed_mask));
    if ((cover[mask] & need) == need && seeded <= instance.budget) {
      candidates.push_back(mask);
    }
  }

  auto alpha_of = [&](std::uint32_t mask) {
    return total[mask] / static_cast<double>(std::popcount(mask));
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              const double aa = alpha_of(a), ab = alpha_of(b);
              if (aa != ab) return aa > ab;
              const std::uint32_t diff = a ^ b;
              if (diff == 0) return false;
              // The set holding the lowest differing vertex is smaller
              // unless the other set ends before it (a proper prefix).
              const int x = std::countr_zero(diff);
              const bool a_holds = (a >> x) & 1u;
              const std::uint32_t other = a_holds ? b : a;
              const bool other_continues = (other >> x) != 0;
              return a_holds == other_continues;
            });

  for (std::uint32_t mask : candidates) {
    VertexSet onsite;
    for (VertexId v = 0; v < n; ++v) {
      if (mask >> v & 1u) onsite.push_back(v);
    }
    const RiskEstimate r =
        risk_exact(net, onsite, instance.seeds, exact_threshold);
    if (r.mean > instance.budget) continue;
    SolveResult out;
    out.onsite = std::move(onsite);
    out.alpha_value = alpha_of(mask);
    out.risk_value = r.mean;
    out.risk_exact = true;
    out.covers = true;
    out.feasible = true;
    return out;
  }
  throw InfeasibleError(InfeasibleReason::kNoFeasibleSet, {},
                        "no subset satisfies coverage and budget");
}

bool valid(const X3CInstance& x3c) {
  const std::uint32_t ground = 3 * x3c.q;
  for (const Triple& t : x3c.triples) {
    if (t[0] >= ground || t[1] >= ground || t[2] >= ground) return false;
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
  }
  for (std::uint32_t i : x3c.planted) {
    if (i >= x3c.triples.size()) return false;
  }
  return true;
}

namespace {

Triple random_triple(std::uint32_t ground, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, ground - 1);
  Triple t{};
  t[0] = pick(rng);
  do t[1] = pick(rng); while (t[1] == t[0]);
  do t[2] = pick(rng); while (t[2] == t[0] || t[2] == t[1]);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

X3CInstance plant_x3c(std::uint32_t q, std::uint32_t extra, std::uint64_t seed) {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  std::mt19937_64 rng(seed);
  X3CInstance x3c;
  x3c.q = q;
  std::vector<std::uint32_t> ground(3 * q);
  std::iota(ground.begin(), ground.end(), 0u);
  std::shuffle(ground.begin(), ground.end(), rng);
  for (std::uint32_t i = 0; i < q; ++i) {
    Triple t{ground[3 * i], ground[3 * i + 1], ground[3 * i + 2]};
    std::sort(t.begin(), t.end());
    x3c.triples.push_back(t);
    x3c.planted.push_back(i);
  }
  for (std::uint32_t i = 0; i < extra; ++i) {
    x3c.triples.push_back(random_triple(3 * q, rng));
  }
  return x3c;
}

X3CInstance random_x3c(std::uint32_t q, std::uint32_t count,
                       std::uint64_t seed) {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  std::mt19937_64 rng(seed);
  X3CInstance x3c;
  x3c.q = q;
  for (std::uint32_t i = 0; i < count; ++i) {
    x3c.triples.push_back(random_triple(3 * q, rng));
  }
  return x3c;
}

ProblemInstance x3c_gadget(const X3CInstance& x3c) {
  if (!valid(x3c)) throw std::invalid_argument("malformed X3C instance");
  const auto n = static_cast<VertexId>(x3c.triples.size());
  std::vector<SkillSet> skills;
  for (const Triple& t : x3c.triples) skills.push_back({t[0], t[1], t[2]});
  std::vector<ContactEdge> contact;
  std::vector<PartnershipEdge> partnership;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      contact.push_back({u, v, 0.0});
      partnership.push_back({u, v, 1.0, 1.0});
    }
  }
  ProblemInstance inst;
  inst.network = TwoLayerNetwork(n, 3 * x3c.q, std::move(contact),
                                 std::move(partnership), std::move(skills));
  inst.required_skills.resize(3 * x3c.q);
  std::iota(inst.required_skills.begin(), inst.required_skills.end(), 0u);
  inst.seeds.resize(n);
  std::iota(inst.seeds.begin(), inst.seeds.end(), 0u);
  inst.budget = static_cast<double>(x3c.q);
  return inst;
}

}  // namespace rshwc
