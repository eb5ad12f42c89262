// Command-line front end: solve, oracle, gadget, sweep, synth.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rshwc/bench.hpp"
#include "rshwc/gria.hpp"
#include "rshwc/oracle.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBadInput = 3;

// Raised for input errors that map to kExitBadInput.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

rshwc::ProblemInstance load_checked(const std::string& path) {
  rshwc::ProblemInstance inst;
  try {
    inst = rshwc::read_instance(path);
  } catch (const rshwc::ParseError& e) {
    throw BadInput(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const rshwc::InvalidNetwork& e) {
    throw BadInput(path + ": " + e.what());
  }
  const auto report = rshwc::validate(inst);
  if (!report.ok()) {
    std::string msg = path + ": invalid instance";
    for (const auto& v : report.violations) msg += "\n  " + v.message;
    throw BadInput(msg);
  }
  return inst;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ordered_json result_json(const rshwc::SolveResult& r) {
  ordered_json j;
  j["feasible"] = r.feasible;
  j["covers"] = r.covers;
  j["onsite"] = r.onsite;
  j["alpha"] = r.alpha_value;
  j["risk"] = r.risk_value;
  j["risk_std_error"] = r.risk_std_error;
  j["risk_exact"] = r.risk_exact;
  ordered_json trace = ordered_json::array();
  for (const auto& step : r.phase_trace) {
    trace.push_back({{"phase", rshwc::to_string(step.phase)},
                     {"move", rshwc::to_string(step.move)},
                     {"vertices", step.vertices},
                     {"alpha", step.alpha},
                     {"risk", step.risk}});
  }
  j["phase_trace"] = std::move(trace);
  return j;
}

ordered_json infeasible_json(const rshwc::InfeasibleError& e) {
  ordered_json j;
  j["feasible"] = false;
  j["reason"] = e.reason() == rshwc::InfeasibleReason::kSkillGap
                    ? "skill_gap"
                    : "no_feasible_set";
  j["missing_skills"] = e.missing_skills();
  j["message"] = e.what();
  return j;
}

std::vector<double> parse_values(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.empty()) continue;
      try {
        std::size_t used = 0;
        out.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw BadInput("bad sweep value '" + cell + "'");
      }
    }
  }
  if (out.empty()) throw BadInput("--values needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-aware skill-covering hybrid work team formation"};
  app.require_subcommand(1);

  // solve
  std::string solve_instance, solve_out;
  std::uint64_t solve_seed = 1;
  std::size_t solve_samples = 200;
  std::size_t solve_threshold = rshwc::kDefaultExactThreshold;
  std::optional<std::uint32_t> solve_te;
  auto* solve_cmd = app.add_subcommand("solve", "Run GRIA on an instance file");
  solve_cmd->add_option("--instance", solve_instance, "Instance file")->required();
  solve_cmd->add_option("--seed", solve_seed, "Scenario seed");
  solve_cmd->add_option("--mc-samples", solve_samples, "Live-edge scenarios");
  solve_cmd->add_option("--exact-threshold", solve_threshold,
                        "Stochastic edges up to which risk is exact");
  solve_cmd->add_option("--t-e", solve_te, "Exchange cap (default: instance)");
  solve_cmd->add_option("--out", solve_out, "JSON output (default stdout)");

  // oracle
  std::string oracle_instance, oracle_out;
  std::size_t oracle_threshold = rshwc::kDefaultExactThreshold;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum");
  oracle_cmd->add_option("--instance", oracle_instance, "Instance file")->required();
  oracle_cmd->add_option("--exact-threshold", oracle_threshold,
                         "Stochastic edge limit for exact risk");
  oracle_cmd->add_option("--out", oracle_out, "JSON output (default stdout)");

  // gadget
  std::uint32_t gadget_q = 2, gadget_extra = 0;
  std::uint64_t gadget_seed = 1;
  bool gadget_unplanted = false;
  std::string gadget_out;
  auto* gadget_cmd = app.add_subcommand("gadget", "Write an X3C reduction instance");
  gadget_cmd->add_option("--q", gadget_q, "Ground set size / 3")->required();
  gadget_cmd->add_option("--extra", gadget_extra, "Random triples beyond the cover");
  gadget_cmd->add_option("--seed", gadget_seed, "Generator seed");
  gadget_cmd->add_flag("--unplanted", gadget_unplanted,
                       "Draw q + extra random triples without a planted cover");
  gadget_cmd->add_option("--out", gadget_out, "Instance output (default stdout)");

  // sweep
  std::string sweep_graph, sweep_out, sweep_var = "rho";
  std::vector<std::string> sweep_values_raw, sweep_solvers_raw{"gria"};
  rshwc::bench::SweepSpec spec;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep to CSV");
  sweep_cmd->add_option("--graph", sweep_graph, "SNAP edge list")->required();
  sweep_cmd->add_option("--augment-seed", spec.seed, "Base seed of every repetition");
  sweep_cmd->add_option("--var", sweep_var, "Swept variable")
      ->check(CLI::IsMember({"R", "rho"}));
  sweep_cmd->add_option("--values", sweep_values_raw, "Values (comma or space separated)")
      ->required();
  sweep_cmd->add_option("--solvers", sweep_solvers_raw,
                        "gria, skill_greedy, random_feasible, collab_greedy")
      ->delimiter(',');
  sweep_cmd->add_option("--reps", spec.repetitions, "Repetitions per value");
  sweep_cmd->add_option("--mc-samples", spec.mc_samples, "Live-edge scenarios");
  sweep_cmd->add_option("--rho", spec.augment.remote_ratio, "Remote ratio when sweeping R");
  sweep_cmd->add_option("--required", spec.instance.required_skills,
                        "|R| when sweeping rho");
  sweep_cmd->add_option("--universe", spec.augment.skill_universe, "Skill universe size");
  sweep_cmd->add_option("--seed-fraction", spec.instance.seed_fraction,
                        "Fraction of vertices that are infection seeds");
  sweep_cmd->add_option("--budget-fraction", spec.instance.budget_fraction,
                        "Epidemic limit as a fraction of |V| (at least 1)");
  sweep_cmd->add_option("--t-e", spec.instance.exchange_cap, "Exchange cap");
  sweep_cmd->add_option("--out", sweep_out, "CSV output (default stdout)");

  // synth
  std::size_t synth_n = 1000, synth_m = 3000;
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write a uniform random edge list");
  synth_cmd->add_option("--n", synth_n, "Vertices");
  synth_cmd->add_option("--m", synth_m, "Edges");
  synth_cmd->add_option("--seed", synth_seed, "Generator seed");
  synth_cmd->add_option("--out", synth_out, "Edge list output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*solve_cmd) {
      const auto inst = load_checked(solve_instance);
      rshwc::SolverConfig config;
      config.propagation.mc_samples = solve_samples;
      config.propagation.exact_threshold = solve_threshold;
      config.rng_seed = solve_seed;
      config.exchange_cap = solve_te;
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto result = rshwc::solve(inst, config);
        write_text(solve_out, result_json(result).dump(2) + "\n");
        std::cerr << "solve: |V*|=" << result.onsite.size()
                  << " alpha=" << result.alpha_value
                  << " risk=" << result.risk_value << " in "
                  << std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count()
                  << " s\n";
        return result.feasible ? kExitOk : kExitInfeasible;
      } catch (const rshwc::InfeasibleError& e) {
        write_text(solve_out, infeasible_json(e).dump(2) + "\n");
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
      }
    }

    if (*oracle_cmd) {
      const auto inst = load_checked(oracle_instance);
      try {
        const auto result = rshwc::brute_force_solve(inst, oracle_threshold);
        write_text(oracle_out, result_json(result).dump(2) + "\n");
        return kExitOk;
      } catch (const rshwc::InfeasibleError& e) {
        write_text(oracle_out, infeasible_json(e).dump(2) + "\n");
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
      } catch (const rshwc::TooLargeError& e) {
        throw BadInput(e.what());
      } catch (const rshwc::TooLargeForExact& e) {
        throw BadInput(e.what());
      }
    }

    if (*gadget_cmd) {
      if (gadget_q == 0) throw BadInput("--q must be at least 1");
      const auto x3c =
          gadget_unplanted
              ? rshwc::random_x3c(gadget_q, gadget_q + gadget_extra, gadget_seed)
              : rshwc::plant_x3c(gadget_q, gadget_extra, gadget_seed);
      std::ostringstream out;
      rshwc::write_instance(out, rshwc::x3c_gadget(x3c));
      write_text(gadget_out, out.str());
      return kExitOk;
    }

    if (*sweep_cmd) {
      spec.variable = sweep_var == "R" ? rshwc::bench::SweepVariable::kRequiredSkills
                                       : rshwc::bench::SweepVariable::kRemoteRatio;
      spec.values = parse_values(sweep_values_raw);
      for (const std::string& name : sweep_solvers_raw) {
        auto kind = rshwc::bench::solver_from_string(name);
        if (!kind) throw BadInput("unknown solver '" + name + "'");
        spec.solvers.push_back(*kind);
      }
      if (spec.variable == rshwc::bench::SweepVariable::kRemoteRatio) {
        for (double v : spec.values) {
          if (!(v > 0.0 && v <= 1.0)) throw BadInput("rho must lie in (0, 1]");
        }
      }
      rshwc::bench::RawGraph graph;
      try {
        graph = rshwc::bench::load_snap_edgelist(sweep_graph);
      } catch (const rshwc::ParseError& e) {
        throw BadInput(sweep_graph + ":" + std::to_string(e.line()) + ": " +
                       e.what());
      }
      std::vector<rshwc::bench::SweepRow> rows;
      try {
        rows = rshwc::bench::run_sweep(spec, graph);
      } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
      }
      std::ostringstream out;
      rshwc::bench::write_sweep_csv(out, rows);
      write_text(sweep_out, out.str());
      return kExitOk;
    }

    if (*synth_cmd) {
      std::ostringstream out;
      try {
        rshwc::bench::write_edgelist(
            out, rshwc::bench::generate_synthetic(synth_n, synth_m, synth_seed));
      } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
      }
      write_text(synth_out, out.str());
      return kExitOk;
    }
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
