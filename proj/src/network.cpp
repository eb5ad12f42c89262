#include "rshwc/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

namespace rshwc {

namespace {

template <typename Edge>
void build_csr(std::size_t n, const std::vector<Edge>& edges,
               std::vector<std::size_t>& offsets,
               std::vector<Incidence>& adjacency) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidNetwork("edge endpoint out of range: " +
                           std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    ++offsets[e.u + 1];
    ++offsets[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  adjacency.resize(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    adjacency[cursor[edges[i].u]++] = {edges[i].v, i};
    adjacency[cursor[edges[i].v]++] = {edges[i].u, i};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency.begin() + offsets[v], adjacency.begin() + offsets[v + 1],
              [](const Incidence& a, const Incidence& b) {
                return a.neighbor < b.neighbor ||
                       (a.neighbor == b.neighbor && a.edge < b.edge);
              });
  }
}

template <typename Edge>
void check_edges(const std::vector<Edge>& edges, const char* layer,
                 ValidationReport& report) {
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      report.violations.push_back(
          {ViolationKind::kSelfLoop,
           std::string(layer) + " self-loop at " + std::to_string(e.u)});
      continue;
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      report.violations.push_back(
          {ViolationKind::kParallelEdge, std::string(layer) + " parallel edge " +
                                             std::to_string(key.first) + "-" +
                                             std::to_string(key.second)});
    }
  }
}

template <typename Edge>
bool symmetric(const TwoLayerNetwork& net,
               std::span<const Incidence> (TwoLayerNetwork::*adj)(VertexId)
                   const) {
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    for (const Incidence& inc : (net.*adj)(v)) {
      auto back = (net.*adj)(inc.neighbor);
      bool found = std::any_of(back.begin(), back.end(), [&](const Incidence& b) {
        return b.neighbor == v && b.edge == inc.edge;
      });
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

TwoLayerNetwork::TwoLayerNetwork(std::size_t vertex_count,
                                 std::size_t skill_universe,
                                 std::vector<ContactEdge> contact,
                                 std::vector<PartnershipEdge> partnership,
                                 std::vector<SkillSet> skills)
    : vertex_count_(vertex_count),
      skill_universe_(skill_universe),
      contact_(std::move(contact)),
      partnership_(std::move(partnership)),
      skills_(std::move(skills)) {
  if (skills_.size() > vertex_count_) {
    throw InvalidNetwork("more skill sets than vertices");
  }
  skills_.resize(vertex_count_);
  for (SkillSet& s : skills_) normalize_set(s);
  build_csr(vertex_count_, contact_, contact_off_, contact_adj_);
  build_csr(vertex_count_, partnership_, partnership_off_, partnership_adj_);
  for (const PartnershipEdge& e : partnership_) total_remote_ += e.remote;
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate(const ProblemInstance& instance) {
  ValidationReport report;
  const TwoLayerNetwork& net = instance.network;
  const std::size_t n = net.vertex_count();

  for (const ContactEdge& e : net.contact_edges()) {
    if (!(e.sigma >= 0.0 && e.sigma <= 1.0)) {
      report.violations.push_back(
          {ViolationKind::kProbabilityRange,
           "contact edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
               " has sigma outside [0,1]"});
    }
  }
  for (const PartnershipEdge& e : net.partnership_edges()) {
    if (!(e.onsite >= 0.0) || !(e.remote >= 0.0)) {
      report.violations.push_back(
          {ViolationKind::kNegativeScore,
           "partnership edge " + std::to_string(e.u) + "-" +
               std::to_string(e.v) + " has a negative score"});
    }
  }
  check_edges(net.contact_edges(), "contact", report);
  check_edges(net.partnership_edges(), "partnership", report);

  for (VertexId v = 0; v < n; ++v) {
    for (SkillId s : net.skills(v)) {
      if (s >= net.skill_universe()) {
        report.violations.push_back(
            {ViolationKind::kSkillRange, "vertex " + std::to_string(v) +
                                             " has skill " + std::to_string(s) +
                                             " outside the universe"});
      }
    }
  }
  for (SkillId s : instance.required_skills) {
    if (s >= net.skill_universe()) {
      report.violations.push_back({ViolationKind::kRequiredSkillRange,
                                   "required skill " + std::to_string(s) +
                                       " outside the universe"});
    }
  }
  for (VertexId v : instance.seeds) {
    if (v >= n) {
      report.violations.push_back(
          {ViolationKind::kSeedRange,
           "seed " + std::to_string(v) + " is not a vertex"});
    }
  }
  if (!(instance.budget >= 0.0)) {
    report.violations.push_back(
        {ViolationKind::kNegativeBudget, "budget must be non-negative"});
  }
  if (!symmetric<ContactEdge>(net, &TwoLayerNetwork::contact_neighbors) ||
      !symmetric<PartnershipEdge>(net, &TwoLayerNetwork::partnership_neighbors)) {
    report.violations.push_back(
        {ViolationKind::kAsymmetricAdjacency, "adjacency is not symmetric"});
  }
  return report;
}

SkillSet covered_skills(const TwoLayerNetwork& network,
                        std::span<const VertexId> subset) {
  SkillSet out;
  for (VertexId v : subset) {
    const SkillSet& s = network.skills(v);
    out.insert(out.end(), s.begin(), s.end());
  }
  normalize_set(out);
  return out;
}

bool covers(const TwoLayerNetwork& network, std::span<const VertexId> subset,
            std::span<const SkillId> required) {
  SkillSet have = covered_skills(network, subset);
  return std::includes(have.begin(), have.end(), required.begin(),
                       required.end());
}

bool is_feasible(const ProblemInstance& instance,
                 std::span<const VertexId> subset, double risk_value) {
  return !subset.empty() && risk_value <= instance.budget &&
         covers(instance.network, subset, instance.required_skills);
}

std::vector<char> membership_mask(std::size_t vertex_count,
                                  std::span<const VertexId> subset) {
  std::vector<char> mask(vertex_count, 0);
  for (VertexId v : subset) mask[v] = 1;
  return mask;
}

// ---------------------------------------------------------------------------
// Instance files

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "bad number '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

ProblemInstance parse_instance(std::istream& in) {
  std::size_t n = 0, universe = 0;
  bool have_header = false;
  std::vector<SkillSet> skills;
  std::vector<char> vertex_seen;
  std::vector<ContactEdge> contact;
  std::vector<PartnershipEdge> partnership;
  std::set<std::pair<VertexId, VertexId>> contact_pairs, partnership_pairs;
  ProblemInstance inst;

  auto vertex = [&](std::string_view tok, std::size_t line) {
    auto v = parse_number<VertexId>(tok, line);
    if (v >= n) throw ParseError(line, "vertex id out of range");
    return v;
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "rshwc" || tok[1] != "v1") {
        throw ParseError(line_no, "expected header 'rshwc v1 <|V|> <|U|>'");
      }
      n = parse_number<std::size_t>(tok[2], line_no);
      universe = parse_number<std::size_t>(tok[3], line_no);
      skills.assign(n, {});
      vertex_seen.assign(n, 0);
      have_header = true;
      continue;
    }

    const std::string_view kind = tok[0];
    if (kind == "v") {
      if (tok.size() < 3 || tok[2] != "s") {
        throw ParseError(line_no, "expected 'v <id> s <skills...>'");
      }
      VertexId v = vertex(tok[1], line_no);
      if (vertex_seen[v]) throw ParseError(line_no, "duplicate vertex line");
      vertex_seen[v] = 1;
      for (std::size_t i = 3; i < tok.size(); ++i) {
        skills[v].push_back(parse_number<SkillId>(tok[i], line_no));
      }
    } else if (kind == "c") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'c <u> <v> <sigma>'");
      ContactEdge e{vertex(tok[1], line_no), vertex(tok[2], line_no),
                    parse_number<double>(tok[3], line_no)};
      if (!contact_pairs.insert(std::minmax(e.u, e.v)).second) {
        throw ParseError(line_no, "parallel contact edge");
      }
      contact.push_back(e);
    } else if (kind == "p") {
      if (tok.size() != 5) {
        throw ParseError(line_no, "expected 'p <u> <v> <onsite> <remote>'");
      }
      PartnershipEdge e{vertex(tok[1], line_no), vertex(tok[2], line_no),
                        parse_number<double>(tok[3], line_no),
                        parse_number<double>(tok[4], line_no)};
      if (!partnership_pairs.insert(std::minmax(e.u, e.v)).second) {
        throw ParseError(line_no, "parallel partnership edge");
      }
      partnership.push_back(e);
    } else if (kind == "R") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        inst.required_skills.push_back(parse_number<SkillId>(tok[i], line_no));
      }
    } else if (kind == "S") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        inst.seeds.push_back(vertex(tok[i], line_no));
      }
    } else if (kind == "C") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'C <budget>'");
      inst.budget = parse_number<double>(tok[1], line_no);
    } else if (kind == "T") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'T <t_e>'");
      inst.exchange_cap = parse_number<std::uint32_t>(tok[1], line_no);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(kind) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");

  normalize_set(inst.required_skills);
  normalize_set(inst.seeds);
  inst.network = TwoLayerNetwork(n, universe, std::move(contact),
                                 std::move(partnership), std::move(skills));
  return inst;
}

ProblemInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const ProblemInstance& instance) {
  const TwoLayerNetwork& net = instance.network;
  auto old_precision = out.precision(17);
  out << "rshwc v1 " << net.vertex_count() << ' ' << net.skill_universe()
      << '\n';
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    out << "v " << v << " s";
    for (SkillId s : net.skills(v)) out << ' ' << s;
    out << '\n';
  }
  for (const ContactEdge& e : net.contact_edges()) {
    out << "c " << e.u << ' ' << e.v << ' ' << e.sigma << '\n';
  }
  for (const PartnershipEdge& e : net.partnership_edges()) {
    out << "p " << e.u << ' ' << e.v << ' ' << e.onsite << ' ' << e.remote
        << '\n';
  }
  out << 'R';
  for (SkillId s : instance.required_skills) out << ' ' << s;
  out << "\nS";
  for (VertexId v : instance.seeds) out << ' ' << v;
  out << "\nC " << instance.budget << "\nT " << instance.exchange_cap << '\n';
  out.precision(old_precision);
}

void write_instance(const std::string& path, const ProblemInstance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_instance(out, instance);
}

}  // namespace rshwc
