#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string_view>
#include <unordered_set>

#include "rshwc/bench.hpp"

namespace rshwc::bench {

RawGraph parse_snap_edgelist(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  auto next_token = [](std::string_view& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::string_view tok = s.substr(i, j - i);
    s.remove_prefix(j);
    return tok;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) {
      rest = rest.substr(0, hash);
    }
    std::string_view a = next_token(rest);
    if (a.empty()) continue;
    std::string_view b = next_token(rest);
    if (b.empty() || !next_token(rest).empty()) {
      throw ParseError(line_no, "expected '<u> <v>'");
    }
    std::uint64_t u = 0, v = 0;
    auto ra = std::from_chars(a.data(), a.data() + a.size(), u);
    auto rb = std::from_chars(b.data(), b.data() + b.size(), v);
    if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() ||
        rb.ec != std::errc() || rb.ptr != b.data() + b.size()) {
      throw ParseError(line_no, "vertex ids must be non-negative integers");
    }
    raw.emplace_back(u, v);
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  normalize_set(ids);
  auto dense = [&](std::uint64_t id) {
    return static_cast<VertexId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  RawGraph g;
  g.vertex_count = ids.size();
  for (auto [u, v] : raw) {
    if (u == v) continue;
    VertexId a = dense(u), b = dense(v);
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  normalize_set(g.edges);
  return g;
}

RawGraph load_snap_edgelist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_snap_edgelist(in);
}

void write_edgelist(std::ostream& out, const RawGraph& graph) {
  out << "# undirected edge list: " << graph.vertex_count << " vertices, "
      << graph.edges.size() << " edges\n";
  for (auto [u, v] : graph.edges) out << u << '\t' << v << '\n';
}

RawGraph generate_synthetic(std::size_t vertex_count, std::size_t edge_count,
                            std::uint64_t seed) {
  const std::size_t max_edges = vertex_count * (vertex_count - 1) / 2;
  if (vertex_count < 2 || edge_count > max_edges) {
    throw std::invalid_argument("edge count not achievable");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(
      0, static_cast<VertexId>(vertex_count - 1));
  std::unordered_set<std::uint64_t> seen;
  RawGraph g;
  g.vertex_count = vertex_count;
  while (g.edges.size() < edge_count) {
    VertexId a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) {
      g.edges.emplace_back(a, b);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

bool valid(const AugmentParams& p) {
  return p.skill_universe > 0 && p.skills_min <= p.skills_max &&
         p.skills_max <= p.skill_universe && p.sigma_low >= 0.0 &&
         p.sigma_low <= p.sigma_high && p.sigma_high <= 1.0 &&
         p.onsite_low >= 0.0 && p.onsite_low <= p.onsite_high &&
         p.remote_ratio > 0.0 && p.remote_ratio <= 1.0;
}

TwoLayerNetwork augment(const RawGraph& graph, const AugmentParams& params) {
  if (!valid(params)) throw std::invalid_argument("invalid augmentation params");
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::uint32_t> skill_count(params.skills_min,
                                                           params.skills_max);
  std::uniform_real_distribution<double> sigma(params.sigma_low,
                                               params.sigma_high);
  std::uniform_real_distribution<double> onsite(params.onsite_low,
                                                params.onsite_high);

  std::vector<SkillId> universe(params.skill_universe);
  std::iota(universe.begin(), universe.end(), 0u);
  std::vector<SkillSet> skills(graph.vertex_count);
  for (SkillSet& s : skills) {
    const std::uint32_t k = skill_count(rng);
    // Partial Fisher-Yates for k distinct skills.
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, universe.size() - 1);
      std::swap(universe[i], universe[pick(rng)]);
      s.push_back(universe[i]);
    }
  }
  std::vector<ContactEdge> contact;
  std::vector<PartnershipEdge> partnership;
  contact.reserve(graph.edges.size());
  partnership.reserve(graph.edges.size());
  for (auto [u, v] : graph.edges) {
    const double sg = sigma(rng);
    const double o = onsite(rng);
    contact.push_back({u, v, sg});
    partnership.push_back({u, v, o, params.remote_ratio * o});
  }
  return TwoLayerNetwork(graph.vertex_count, params.skill_universe,
                         std::move(contact), std::move(partnership),
                         std::move(skills));
}

ProblemInstance make_instance(TwoLayerNetwork network,
                              const InstanceParams& params) {
  std::mt19937_64 rng(params.seed);
  const std::size_t n = network.vertex_count();
  std::vector<VertexId> everyone(n);
  std::iota(everyone.begin(), everyone.end(), 0u);
  SkillSet present = covered_skills(network, everyone);
  std::shuffle(present.begin(), present.end(), rng);
  if (params.required_skills > present.size()) {
    throw std::invalid_argument("more required skills than the network has");
  }

  ProblemInstance inst;
  inst.required_skills.assign(present.begin(),
                              present.begin() + static_cast<std::ptrdiff_t>(
                                                    params.required_skills));
  normalize_set(inst.required_skills);

  std::shuffle(everyone.begin(), everyone.end(), rng);
  const auto seed_count = static_cast<std::size_t>(
      std::ceil(params.seed_fraction * static_cast<double>(n)));
  inst.seeds.assign(everyone.begin(),
                    everyone.begin() + static_cast<std::ptrdiff_t>(
                                           std::min(seed_count, n)));
  normalize_set(inst.seeds);
  inst.budget = std::max(1.0, params.budget_fraction * static_cast<double>(n));
  inst.exchange_cap = params.exchange_cap;
  inst.network = std::move(network);
  return inst;
}

}  // namespace rshwc::bench
