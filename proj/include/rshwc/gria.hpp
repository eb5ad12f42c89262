#ifndef RSHWC_GRIA_HPP_
#define RSHWC_GRIA_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rshwc/network.hpp"
#include "rshwc/objective.hpp"
#include "rshwc/propagation.hpp"
#include "rshwc/risk_model.hpp"

namespace rshwc {

struct SolverConfig {
  // mc_samples and exact_threshold are used from here; the seed is not,
  // scenario pools are seeded from rng_seed below.
  PropagationConfig propagation;
  double epsilon = 1e-9;
  // Overrides the instance's exchange cap when set.
  std::optional<std::uint32_t> exchange_cap;
  std::uint64_t rng_seed = 1;
};

enum class Phase { kConstruction, kRefinement, kReplacement, kVerification };
enum class Move { kAdd, kSeedSingleton, kRemove, kSwap, kRejectSwap, kVerify };

const char* to_string(Phase phase);
const char* to_string(Move move);

struct PhaseStep {
  Phase phase;
  Move move;
  VertexSet vertices;
  double alpha;
  double risk;
};

struct SolveResult {
  VertexSet onsite;
  double alpha_value = 0.0;
  double risk_value = 0.0;
  double risk_std_error = 0.0;
  bool risk_exact = false;
  bool covers = false;
  bool feasible = false;
  std::vector<PhaseStep> phase_trace;
};

enum class InfeasibleReason { kSkillGap, kNoFeasibleSet };

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(InfeasibleReason reason, SkillSet missing,
                  const std::string& what)
      : std::runtime_error(what), reason_(reason), missing_(std::move(missing)) {}
  InfeasibleReason reason() const { return reason_; }
  const SkillSet& missing_skills() const { return missing_; }

 private:
  InfeasibleReason reason_;
  SkillSet missing_;
};

/// Seed of the independent scenario pool used for final verification.
std::uint64_t verification_seed(std::uint64_t rng_seed);

/// Scores an onsite set with a fresh risk evaluation. Feasible iff the set is
/// non-empty, covers R, and the fresh risk is within budget (within three
/// standard errors of it for a sampled estimate).
SolveResult evaluate_solution(const ProblemInstance& instance,
                              const VertexSet& onsite,
                              const SolverConfig& config);

/// Guided risk-aware iterative assembling: greedy construction by
/// collaboration gain per unit of marginal risk, below-average pruning that
/// preserves skill coverage, then bounded high-risk/low-risk member swaps.
///
/// One solver owns one coupled risk model for its whole run, so every
/// comparison in all three phases sees the same scenarios.
class GriaSolver {
 public:
  GriaSolver(const ProblemInstance& instance, const SolverConfig& config);
  GriaSolver(const ProblemInstance& instance, const SolverConfig& config,
             const VertexSet& onsite);

  /// Throws InfeasibleError when a missing skill cannot be covered in budget.
  void construct();
  void refine();
  void replace();
  SolveResult finish();

  const CollabState& state() const { return state_; }
  const RiskModel& risk_model() const { return *risk_; }
  const std::vector<PhaseStep>& trace() const { return trace_; }

 private:
  struct Candidate {
    VertexId v;
    double primary;
    double gain;
  };
  static bool better(const Candidate& a, const Candidate& b);

  void add(VertexId v, Phase phase, Move move);
  void remove(VertexId v);
  bool covers_missing(VertexId v) const;
  bool removable(VertexId v) const;
  SkillSet missing_skills() const;
  void record(Phase phase, Move move, VertexSet vertices);
  double ratio(double gain, double delta) const;

  const ProblemInstance& instance_;
  SolverConfig config_;
  CollabState state_;
  std::unique_ptr<RiskModel> risk_;
  std::vector<char> required_;
  std::vector<std::uint32_t> cover_count_;
  std::size_t missing_count_ = 0;
  std::vector<PhaseStep> trace_;
};

CollabState rwc_phase(const ProblemInstance& instance,
                      const SolverConfig& config);
CollabState swr_phase(const ProblemInstance& instance, const CollabState& state,
                      const SolverConfig& config);
CollabState rmr_phase(const ProblemInstance& instance, const CollabState& state,
                      const SolverConfig& config);

/// All three phases followed by verification. Propagates InfeasibleError.
SolveResult solve(const ProblemInstance& instance, const SolverConfig& config);

}  // namespace rshwc

#endif  // RSHWC_GRIA_HPP_
