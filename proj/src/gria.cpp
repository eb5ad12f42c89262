#include "rshwc/gria.hpp"

#include <algorithm>
#include <cmath>

namespace rshwc {

namespace {

PropagationConfig seeded(const SolverConfig& config, std::uint64_t seed) {
  PropagationConfig p = config.propagation;
  p.rng_seed = seed;
  return p;
}

bool at_least(double value, double reference) {
  return value >= reference - 1e-12 * std::max(1.0, std::abs(reference));
}

}  // namespace

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::kConstruction: return "rwc";
    case Phase::kRefinement: return "swr";
    case Phase::kReplacement: return "rmr";
    case Phase::kVerification: return "verify";
  }
  return "?";
}

const char* to_string(Move move) {
  switch (move) {
    case Move::kAdd: return "add";
    case Move::kSeedSingleton: return "seed_singleton";
    case Move::kRemove: return "remove";
    case Move::kSwap: return "swap";
    case Move::kRejectSwap: return "reject_swap";
    case Move::kVerify: return "verify";
  }
  return "?";
}

std::uint64_t verification_seed(std::uint64_t rng_seed) {
  return rng_seed ^ 0xa5a5f00dcafe1234ULL;
}

SolveResult evaluate_solution(const ProblemInstance& instance,
                              const VertexSet& onsite,
                              const SolverConfig& config) {
  SolveResult out;
  out.onsite = onsite;
  normalize_set(out.onsite);
  if (out.onsite.empty()) return out;
  out.alpha_value = alpha(instance.network, out.onsite);
  const RiskEstimate est =
      risk_auto(instance.network, out.onsite, instance.seeds,
                seeded(config, verification_seed(config.rng_seed)));
  out.risk_value = est.mean;
  out.risk_std_error = est.std_error;
  out.risk_exact = est.exact;
  out.covers = covers(instance.network, out.onsite, instance.required_skills);
  const double slack = est.exact ? 0.0 : 3.0 * est.std_error;
  out.feasible = out.covers && est.mean <= instance.budget + slack;
  return out;
}

// ---------------------------------------------------------------------------

GriaSolver::GriaSolver(const ProblemInstance& instance,
                       const SolverConfig& config)
    : instance_(instance),
      config_(config),
      state_(instance.network),
      risk_(make_risk_model(instance, seeded(config, config.rng_seed))) {
  std::size_t universe = instance.network.skill_universe();
  for (SkillId s : instance.required_skills) universe = std::max<std::size_t>(universe, s + 1);
  for (VertexId v = 0; v < instance.network.vertex_count(); ++v) {
    for (SkillId s : instance.network.skills(v)) {
      universe = std::max<std::size_t>(universe, s + 1);
    }
  }
  required_.assign(universe, 0);
  cover_count_.assign(universe, 0);
  for (SkillId s : instance.required_skills) required_[s] = 1;
  missing_count_ = instance.required_skills.size();
}

GriaSolver::GriaSolver(const ProblemInstance& instance,
                       const SolverConfig& config, const VertexSet& onsite)
    : GriaSolver(instance, config) {
  for (VertexId v : onsite) {
    state_.add(v);
    risk_->add(v);
    for (SkillId s : instance_.network.skills(v)) {
      if (required_[s] && cover_count_[s]++ == 0) --missing_count_;
    }
  }
}

bool GriaSolver::better(const Candidate& a, const Candidate& b) {
  if (a.primary != b.primary) return a.primary > b.primary;
  if (a.gain != b.gain) return a.gain > b.gain;
  return a.v < b.v;
}

double GriaSolver::ratio(double gain, double delta) const {
  return gain / std::max(delta, config_.epsilon);
}

bool GriaSolver::covers_missing(VertexId v) const {
  for (SkillId s : instance_.network.skills(v)) {
    if (required_[s] && cover_count_[s] == 0) return true;
  }
  return false;
}

bool GriaSolver::removable(VertexId v) const {
  for (SkillId s : instance_.network.skills(v)) {
    if (required_[s] && cover_count_[s] == 1) return false;
  }
  return true;
}

SkillSet GriaSolver::missing_skills() const {
  SkillSet out;
  for (SkillId s : instance_.required_skills) {
    if (cover_count_[s] == 0) out.push_back(s);
  }
  return out;
}

void GriaSolver::record(Phase phase, Move move, VertexSet vertices) {
  const double a = state_.empty() ? 0.0 : state_.alpha();
  trace_.push_back({phase, move, std::move(vertices), a, risk_->risk()});
}

void GriaSolver::add(VertexId v, Phase phase, Move move) {
  state_.add(v);
  risk_->add(v);
  for (SkillId s : instance_.network.skills(v)) {
    if (required_[s] && cover_count_[s]++ == 0) --missing_count_;
  }
  record(phase, move, {v});
}

void GriaSolver::remove(VertexId v) {
  state_.remove(v);
  risk_->remove(v);
  for (SkillId s : instance_.network.skills(v)) {
    if (required_[s] && --cover_count_[s] == 0) ++missing_count_;
  }
}

void GriaSolver::construct() {
  const std::size_t n = instance_.network.vertex_count();
  const double budget = instance_.budget;

  // Stage 1: cover the required skills.
  while (missing_count_ > 0) {
    std::optional<Candidate> best;
    const double current = risk_->risk();
    for (VertexId v = 0; v < n; ++v) {
      if (state_.contains(v) || !covers_missing(v)) continue;
      const double after = risk_->risk_with(v);
      if (after > budget) continue;
      Candidate c{v, ratio(state_.gain(v), after - current), state_.gain(v)};
      if (!best || better(c, *best)) best = c;
    }
    if (!best) {
      throw InfeasibleError(InfeasibleReason::kSkillGap, missing_skills(),
                            "no candidate covers a missing skill within budget");
    }
    add(best->v, Phase::kConstruction, Move::kAdd);
  }

  // Every gain is zero against an empty set; start from the singleton with
  // the best whole-network gain per unit of risk.
  if (state_.empty()) {
    std::optional<Candidate> best;
    for (VertexId v = 0; v < n; ++v) {
      const double after = risk_->risk_with(v);
      if (after > budget) continue;
      double g = 0.0;
      for (const Incidence& inc : instance_.network.partnership_neighbors(v)) {
        const PartnershipEdge& e = instance_.network.partnership_edges()[inc.edge];
        g += e.onsite - e.remote;
      }
      Candidate c{v, ratio(g, after), g};
      if (!best || better(c, *best)) best = c;
    }
    if (!best) {
      throw InfeasibleError(InfeasibleReason::kNoFeasibleSet, {},
                            "no single vertex fits the budget");
    }
    add(best->v, Phase::kConstruction, Move::kSeedSingleton);
  }

  // Stage 2: keep adding positive-gain vertices while the budget allows.
  for (;;) {
    std::optional<Candidate> best;
    const double current = risk_->risk();
    for (VertexId v = 0; v < n; ++v) {
      if (state_.contains(v) || !(state_.gain(v) > 0.0)) continue;
      const double after = risk_->risk_with(v);
      if (after > budget) continue;
      Candidate c{v, ratio(state_.gain(v), after - current), state_.gain(v)};
      if (!best || better(c, *best)) best = c;
    }
    if (!best) break;
    add(best->v, Phase::kConstruction, Move::kAdd);
  }
}

void GriaSolver::refine() {
  // Each removal changes α and the gains, so the scan restarts from the
  // lowest current gain after every removal.
  while (state_.size() > 1) {
    VertexSet order = state_.members();
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return state_.gain(a) < state_.gain(b);
    });
    const double a = state_.alpha();
    auto it = std::find_if(order.begin(), order.end(), [&](VertexId v) {
      return state_.gain(v) < a && removable(v);
    });
    if (it == order.end()) break;
    remove(*it);
    record(Phase::kRefinement, Move::kRemove, {*it});
  }
}

void GriaSolver::replace() {
  const std::uint32_t cap =
      config_.exchange_cap.value_or(instance_.exchange_cap);
  const std::size_t n = instance_.network.vertex_count();
  for (std::uint32_t trial = 0; trial < cap; ++trial) {
    if (state_.empty() || state_.size() == n) return;
    const std::vector<double> drops = risk_->removal_drops();
    std::optional<Candidate> out_best;
    for (VertexId v = 0; v < n; ++v) {
      if (!state_.contains(v)) continue;
      Candidate c{v, drops[v], state_.gain(v)};
      if (!out_best || better(c, *out_best)) out_best = c;
    }
    const double current = risk_->risk();
    std::optional<Candidate> in_best;
    for (VertexId v = 0; v < n; ++v) {
      if (state_.contains(v)) continue;
      // Smallest added risk first: negate so `better` prefers it.
      Candidate c{v, -(risk_->risk_with(v) - current), state_.gain(v)};
      if (!in_best || better(c, *in_best)) in_best = c;
    }
    const VertexId v_out = out_best->v, v_in = in_best->v;
    const double alpha_before = state_.alpha();

    remove(v_out);
    state_.add(v_in);
    risk_->add(v_in);
    for (SkillId s : instance_.network.skills(v_in)) {
      if (required_[s] && cover_count_[s]++ == 0) --missing_count_;
    }
    const bool accept = missing_count_ == 0 &&
                        at_least(state_.alpha(), alpha_before) &&
                        risk_->risk() <= instance_.budget;
    if (accept) {
      record(Phase::kReplacement, Move::kSwap, {v_out, v_in});
      continue;
    }
    remove(v_in);
    state_.add(v_out);
    risk_->add(v_out);
    for (SkillId s : instance_.network.skills(v_out)) {
      if (required_[s] && cover_count_[s]++ == 0) --missing_count_;
    }
    record(Phase::kReplacement, Move::kRejectSwap, {v_out, v_in});
    return;
  }
}

SolveResult GriaSolver::finish() {
  SolveResult result = evaluate_solution(instance_, state_.members(), config_);
  result.phase_trace = trace_;
  result.phase_trace.push_back({Phase::kVerification, Move::kVerify,
                                result.onsite, result.alpha_value,
                                result.risk_value});
  return result;
}

// ---------------------------------------------------------------------------

CollabState rwc_phase(const ProblemInstance& instance,
                      const SolverConfig& config) {
  GriaSolver solver(instance, config);
  solver.construct();
  return solver.state();
}

CollabState swr_phase(const ProblemInstance& instance, const CollabState& state,
                      const SolverConfig& config) {
  GriaSolver solver(instance, config, state.members());
  solver.refine();
  return solver.state();
}

CollabState rmr_phase(const ProblemInstance& instance, const CollabState& state,
                      const SolverConfig& config) {
  GriaSolver solver(instance, config, state.members());
  solver.replace();
  return solver.state();
}

SolveResult solve(const ProblemInstance& instance, const SolverConfig& config) {
  GriaSolver solver(instance, config);
  solver.construct();
  solver.refine();
  solver.replace();
  return solver.finish();
}

}  // namespace rshwc
