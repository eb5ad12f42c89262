#ifndef RSHWC_NETWORK_HPP_
#define RSHWC_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rshwc {

using VertexId = std::uint32_t;
using SkillId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;
/// Sorted, duplicate-free list of skill ids.
using SkillSet = std::vector<SkillId>;

struct ContactEdge {
  VertexId u = 0;
  VertexId v = 0;
  double sigma = 0.0;  // influence probability
};

struct PartnershipEdge {
  VertexId u = 0;
  VertexId v = 0;
  double onsite = 0.0;
  double remote = 0.0;
};

/// Adjacency entry: neighbor plus index into the owning edge list.
struct Incidence {
  VertexId neighbor;
  std::uint32_t edge;
};

class InvalidNetwork : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two undirected layers over a shared vertex set plus per-vertex skills.
///
/// Immutable after construction. Adjacency is stored CSR-style and is
/// symmetric by construction. Endpoints must be valid vertex ids (otherwise
/// InvalidNetwork is thrown); value-level problems such as an out-of-range
/// probability are left for validate() to report.
class TwoLayerNetwork {
 public:
  TwoLayerNetwork() = default;
  TwoLayerNetwork(std::size_t vertex_count, std::size_t skill_universe,
                  std::vector<ContactEdge> contact,
                  std::vector<PartnershipEdge> partnership,
                  std::vector<SkillSet> skills);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t skill_universe() const { return skill_universe_; }

  const std::vector<ContactEdge>& contact_edges() const { return contact_; }
  const std::vector<PartnershipEdge>& partnership_edges() const {
    return partnership_;
  }

  std::span<const Incidence> contact_neighbors(VertexId v) const {
    return {contact_adj_.data() + contact_off_[v],
            contact_off_[v + 1] - contact_off_[v]};
  }
  std::span<const Incidence> partnership_neighbors(VertexId v) const {
    return {partnership_adj_.data() + partnership_off_[v],
            partnership_off_[v + 1] - partnership_off_[v]};
  }

  const SkillSet& skills(VertexId v) const { return skills_[v]; }

  /// Σ r(e) over every partnership edge.
  double total_remote() const { return total_remote_; }

 private:
  std::size_t vertex_count_ = 0;
  std::size_t skill_universe_ = 0;
  std::vector<ContactEdge> contact_;
  std::vector<PartnershipEdge> partnership_;
  std::vector<SkillSet> skills_;
  std::vector<std::size_t> contact_off_{0};
  std::vector<Incidence> contact_adj_;
  std::vector<std::size_t> partnership_off_{0};
  std::vector<Incidence> partnership_adj_;
  double total_remote_ = 0.0;
};

struct ProblemInstance {
  TwoLayerNetwork network;
  SkillSet required_skills;
  VertexSet seeds;
  double budget = 0.0;
  std::uint32_t exchange_cap = 50;
};

enum class ViolationKind {
  kProbabilityRange,
  kNegativeScore,
  kSelfLoop,
  kParallelEdge,
  kSkillRange,
  kRequiredSkillRange,
  kSeedRange,
  kNegativeBudget,
  kAsymmetricAdjacency,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

ValidationReport validate(const ProblemInstance& instance);

/// Union of skill sets over `subset`.
SkillSet covered_skills(const TwoLayerNetwork& network,
                        std::span<const VertexId> subset);

bool covers(const TwoLayerNetwork& network, std::span<const VertexId> subset,
            std::span<const SkillId> required);

/// Both constraints of the problem hold and the subset is non-empty.
bool is_feasible(const ProblemInstance& instance,
                 std::span<const VertexId> subset, double risk_value);

/// Sorts and removes duplicates in place.
template <typename T>
void normalize_set(std::vector<T>& s);

/// Byte mask of length vertex_count with 1 at every member.
std::vector<char> membership_mask(std::size_t vertex_count,
                                  std::span<const VertexId> subset);

// Instance file I/O ---------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

ProblemInstance parse_instance(std::istream& in);
ProblemInstance read_instance(const std::string& path);
void write_instance(std::ostream& out, const ProblemInstance& instance);
void write_instance(const std::string& path, const ProblemInstance& instance);

}  // namespace rshwc

#include "rshwc/network_inl.hpp"

#endif  // RSHWC_NETWORK_HPP_
