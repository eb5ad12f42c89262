#ifndef RSHWC_ORACLE_HPP_
#define RSHWC_ORACLE_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rshwc/gria.hpp"
#include "rshwc/network.hpp"

namespace rshwc {

class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceMaxVertices = 20;

/// Exhaustive optimum over all non-empty subsets with exact risk. Subsets are
/// visited by decreasing α (ties: lexicographically smallest vertex list), so
/// the first one that covers R and fits the budget is returned.
///
/// Throws TooLargeError above kBruteForceMaxVertices vertices or 64 required
/// skills, TooLargeForExact when the network has more stochastic contact
/// edges than `exact_threshold`, InfeasibleError when nothing is feasible.
SolveResult brute_force_solve(const ProblemInstance& instance,
                              std::size_t exact_threshold = kDefaultExactThreshold);

using Triple = std::array<std::uint32_t, 3>;

struct X3CInstance {
  std::uint32_t q = 0;  // ground set is {0, ..., 3q-1}
  std::vector<Triple> triples;
  // Indices of a known exact cover, empty when none was planted.
  std::vector<std::uint32_t> planted;
};

bool valid(const X3CInstance& x3c);

/// q disjoint triples partitioning the ground set, followed by `extra` random
/// triples. The planted cover occupies indices 0..q-1.
X3CInstance plant_x3c(std::uint32_t q, std::uint32_t extra, std::uint64_t seed);

/// `count` uniformly random triples; no cover is planted.
X3CInstance random_x3c(std::uint32_t q, std::uint32_t count, std::uint64_t seed);

/// One vertex per triple with that triple as its skill set; R = universe =
/// ground set; complete partnership layer with o = r = 1; complete contact
/// layer with sigma = 0; every vertex a seed; budget q.
ProblemInstance x3c_gadget(const X3CInstance& x3c);

}  // namespace rshwc

#endif  // RSHWC_ORACLE_HPP_
