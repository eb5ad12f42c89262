#ifndef RSHWC_BENCH_HPP_
#define RSHWC_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rshwc/gria.hpp"
#include "rshwc/network.hpp"

namespace rshwc::bench {

/// Undirected simple graph with dense ids.
struct RawGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;  // u < v, sorted
};

/// Whitespace-separated `u v` lines, `#` comments. Duplicate and reversed
/// edges collapse, self-loops are dropped, ids are densified in ascending
/// order of the original ids. Throws ParseError with the line number.
RawGraph parse_snap_edgelist(std::istream& in);
RawGraph load_snap_edgelist(const std::string& path);
void write_edgelist(std::ostream& out, const RawGraph& graph);

/// Uniform random simple graph with exactly `edge_count` edges.
RawGraph generate_synthetic(std::size_t vertex_count, std::size_t edge_count,
                            std::uint64_t seed);

struct AugmentParams {
  std::size_t skill_universe = 40;
  std::uint32_t skills_min = 1;
  std::uint32_t skills_max = 3;
  double sigma_low = 0.01;
  double sigma_high = 0.1;
  double onsite_low = 0.5;
  double onsite_high = 1.5;
  double remote_ratio = 0.7;  // r = ratio * o
  std::uint64_t seed = 1;
};

bool valid(const AugmentParams& params);

/// Both layers reuse the graph's topology. Draws never depend on
/// remote_ratio, so networks that differ only in it share every other value.
TwoLayerNetwork augment(const RawGraph& graph, const AugmentParams& params);

struct InstanceParams {
  std::size_t required_skills = 10;
  double seed_fraction = 0.01;
  double budget_fraction = 0.005;  // C = max(1, fraction * |V|)
  std::uint32_t exchange_cap = 50;
  std::uint64_t seed = 1;
};

/// R is a prefix of a seeded permutation of the skills present in the
/// network, so instances with growing |R| are nested.
ProblemInstance make_instance(TwoLayerNetwork network,
                              const InstanceParams& params);

// Internal comparators -------------------------------------------------------

enum class SolverKind { kGria, kSkillGreedy, kRandomFeasible, kCollabGreedy };

const char* to_string(SolverKind kind);
std::optional<SolverKind> solver_from_string(const std::string& name);

/// Greedy set cover by number of newly covered skills within budget.
SolveResult baseline_skill_greedy(const ProblemInstance& instance,
                                  const SolverConfig& config);
/// Best α over `trials` random-order feasible covers.
SolveResult baseline_random_feasible(const ProblemInstance& instance,
                                     const SolverConfig& config,
                                     std::uint32_t trials = 32);
/// Greedy by collaboration gain alone; risk only gates admission.
SolveResult baseline_collab_greedy(const ProblemInstance& instance,
                                   const SolverConfig& config);

/// Runs one solver. An InfeasibleError becomes feasible = false.
SolveResult run_solver(SolverKind kind, const ProblemInstance& instance,
                       const SolverConfig& config);

// Sweeps ---------------------------------------------------------------------

enum class SweepVariable { kRequiredSkills, kRemoteRatio };

const char* to_string(SweepVariable variable);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kRemoteRatio;
  std::vector<double> values;
  std::uint32_t repetitions = 1;
  std::vector<SolverKind> solvers;
  AugmentParams augment;
  InstanceParams instance;
  std::size_t mc_samples = 200;
  std::uint64_t seed = 1;
};

struct SweepRow {
  bool aggregate = false;
  std::string solver;
  std::string variable;
  double value = 0.0;
  std::uint32_t rep = 0;          // data rows only
  std::uint64_t seed = 0;         // data rows only
  std::uint32_t feasible = 0;     // 0/1, or feasible count for aggregates
  std::optional<double> alpha;    // mean for aggregates
  std::optional<double> alpha_std;
  std::optional<double> risk;
  std::optional<double> risk_std;  // std error (data) or deviation (aggregate)
  double onsite_size = 0.0;
  double wall_ms = 0.0;
};

/// Column layout of the CSV written by write_sweep_csv.
extern const char* const kSweepCsvHeader;

/// Data rows ordered by (solver, value, repetition), then one aggregate row
/// per (solver, value) over the feasible repetitions. Repetitions run in
/// parallel up to thread_limit() workers; results do not depend on it.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RawGraph& graph);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// RSHWC_THREADS when set and positive, else hardware concurrency.
unsigned thread_limit();

}  // namespace rshwc::bench

#endif  // RSHWC_BENCH_HPP_
