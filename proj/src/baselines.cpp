#include <algorithm>
#include <numeric>
#include <random>

#include "rshwc/bench.hpp"
#include "rshwc/objective.hpp"
#include "rshwc/risk_model.hpp"

namespace rshwc::bench {

namespace {

PropagationConfig crn_config(const SolverConfig& config) {
  PropagationConfig p = config.propagation;
  p.rng_seed = config.rng_seed;
  return p;
}

// Required-skill coverage counts for a growing set.
class Coverage {
 public:
  explicit Coverage(const ProblemInstance& instance) : instance_(&instance) {
    std::size_t universe = instance.network.skill_universe();
    for (SkillId s : instance.required_skills) {
      universe = std::max<std::size_t>(universe, s + 1);
    }
    for (VertexId v = 0; v < instance.network.vertex_count(); ++v) {
      for (SkillId s : instance.network.skills(v)) {
        universe = std::max<std::size_t>(universe, s + 1);
      }
    }
    required_.assign(universe, 0);
    covered_.assign(universe, 0);
    for (SkillId s : instance.required_skills) required_[s] = 1;
    missing_ = instance.required_skills.size();
  }

  std::size_t missing() const { return missing_; }

  std::size_t new_skills(VertexId v) const {
    std::size_t k = 0;
    for (SkillId s : instance_->network.skills(v)) {
      if (required_[s] && !covered_[s]) ++k;
    }
    return k;
  }

  void add(VertexId v) {
    for (SkillId s : instance_->network.skills(v)) {
      if (required_[s] && !covered_[s]) {
        covered_[s] = 1;
        --missing_;
      }
    }
  }

  SkillSet missing_skills() const {
    SkillSet out;
    for (SkillId s : instance_->required_skills) {
      if (!covered_[s]) out.push_back(s);
    }
    return out;
  }

 private:
  const ProblemInstance* instance_;
  std::vector<char> required_, covered_;
  std::size_t missing_ = 0;
};

}  // namespace

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kGria: return "gria";
    case SolverKind::kSkillGreedy: return "skill_greedy";
    case SolverKind::kRandomFeasible: return "random_feasible";
    case SolverKind::kCollabGreedy: return "collab_greedy";
  }
  return "?";
}

std::optional<SolverKind> solver_from_string(const std::string& name) {
  for (SolverKind k : {SolverKind::kGria, SolverKind::kSkillGreedy,
                       SolverKind::kRandomFeasible, SolverKind::kCollabGreedy}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

SolveResult baseline_skill_greedy(const ProblemInstance& instance,
                                  const SolverConfig& config) {
  auto risk = make_risk_model(instance, crn_config(config));
  Coverage coverage(instance);
  VertexSet chosen;
  const std::size_t n = instance.network.vertex_count();
  while (coverage.missing() > 0) {
    std::size_t best_k = 0;
    VertexId best = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (risk->contains(v)) continue;
      const std::size_t k = coverage.new_skills(v);
      if (k <= best_k) continue;
      if (risk->risk_with(v) > instance.budget) continue;
      best_k = k;
      best = v;
    }
    if (best_k == 0) {
      throw InfeasibleError(InfeasibleReason::kSkillGap,
                            coverage.missing_skills(),
                            "skill greedy cannot cover within budget");
    }
    risk->add(best);
    coverage.add(best);
    chosen.push_back(best);
  }
  if (chosen.empty()) {
    // Nothing required: the cheapest single vertex.
    for (VertexId v = 0; v < n; ++v) {
      if (risk->risk_with(v) <= instance.budget) {
        chosen.push_back(v);
        break;
      }
    }
    if (chosen.empty()) {
      throw InfeasibleError(InfeasibleReason::kNoFeasibleSet, {},
                            "no single vertex fits the budget");
    }
  }
  return evaluate_solution(instance, chosen, config);
}

SolveResult baseline_random_feasible(const ProblemInstance& instance,
                                     const SolverConfig& config,
                                     std::uint32_t trials) {
  auto risk = make_risk_model(instance, crn_config(config));
  const std::size_t n = instance.network.vertex_count();
  std::mt19937_64 rng(config.rng_seed ^ 0x72616e64ULL);
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::optional<VertexSet> best;
  double best_alpha = 0.0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    Coverage coverage(instance);
    VertexSet chosen;
    for (VertexId v : order) {
      if (coverage.missing() == 0 && !chosen.empty()) break;
      if (coverage.missing() > 0 && coverage.new_skills(v) == 0) continue;
      if (risk->risk_with(v) > instance.budget) continue;
      risk->add(v);
      coverage.add(v);
      chosen.push_back(v);
    }
    for (VertexId v : chosen) risk->remove(v);
    if (coverage.missing() > 0 || chosen.empty()) continue;
    normalize_set(chosen);
    const double a = alpha(instance.network, chosen);
    if (!best || a > best_alpha) {
      best = chosen;
      best_alpha = a;
    }
  }
  if (!best) {
    throw InfeasibleError(InfeasibleReason::kNoFeasibleSet, {},
                          "no random cover fit the budget");
  }
  return evaluate_solution(instance, *best, config);
}

SolveResult baseline_collab_greedy(const ProblemInstance& instance,
                                   const SolverConfig& config) {
  auto risk = make_risk_model(instance, crn_config(config));
  CollabState state(instance.network);
  Coverage coverage(instance);
  const std::size_t n = instance.network.vertex_count();
  auto pick = [&](bool need_skill) -> std::optional<VertexId> {
    std::optional<VertexId> best;
    for (VertexId v = 0; v < n; ++v) {
      if (state.contains(v)) continue;
      if (need_skill ? coverage.new_skills(v) == 0 : !(state.gain(v) > 0.0)) {
        continue;
      }
      if (best && state.gain(v) <= state.gain(*best)) continue;
      if (risk->risk_with(v) > instance.budget) continue;
      best = v;
    }
    return best;
  };
  auto take = [&](VertexId v) {
    state.add(v);
    risk->add(v);
    coverage.add(v);
  };
  while (coverage.missing() > 0) {
    auto v = pick(true);
    if (!v) {
      throw InfeasibleError(InfeasibleReason::kSkillGap,
                            coverage.missing_skills(),
                            "collaboration greedy cannot cover within budget");
    }
    take(*v);
  }
  if (state.empty()) {
    for (VertexId v = 0; v < n && state.empty(); ++v) {
      if (risk->risk_with(v) <= instance.budget) take(v);
    }
    if (state.empty()) {
      throw InfeasibleError(InfeasibleReason::kNoFeasibleSet, {},
                            "no single vertex fits the budget");
    }
  }
  while (auto v = pick(false)) take(*v);
  return evaluate_solution(instance, state.members(), config);
}

SolveResult run_solver(SolverKind kind, const ProblemInstance& instance,
                       const SolverConfig& config) {
  try {
    switch (kind) {
      case SolverKind::kGria: return solve(instance, config);
      case SolverKind::kSkillGreedy:
        return baseline_skill_greedy(instance, config);
      case SolverKind::kRandomFeasible:
        return baseline_random_feasible(instance, config);
      case SolverKind::kCollabGreedy:
        return baseline_collab_greedy(instance, config);
    }
  } catch (const InfeasibleError&) {
  }
  return SolveResult{};
}

}  // namespace rshwc::bench
