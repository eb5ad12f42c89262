#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rshwc/bench.hpp"
#include "rshwc/oracle.hpp"
#include "support.hpp"

using namespace rshwc;
using namespace rshwc::bench;

namespace {

RawGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_snap_edgelist(in);
}

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    out << line.substr(0, line.rfind(',')) << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("edge list parsing") {
  auto g = parse("# a comment\n1 2\n2 1\n\n5\t1\n3 3\n");
  CHECK(g.vertex_count == 4);  // ids 1, 2, 3, 5
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == std::pair<VertexId, VertexId>{0, 1});
  CHECK(g.edges[1] == std::pair<VertexId, VertexId>{0, 3});

  g = parse("");
  CHECK(g.vertex_count == 0);
  CHECK(g.edges.empty());

  try {
    parse("1 2\n3 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("1 2 3\n"), ParseError);
}

TEST_CASE("edge list round trip") {
  // Isolated vertices cannot be represented, so use a graph without any.
  const auto g = generate_synthetic(50, 400, 4);
  std::vector<char> touched(50, 0);
  for (auto [u, v] : g.edges) touched[u] = touched[v] = 1;
  REQUIRE(std::count(touched.begin(), touched.end(), 1) == 50);
  std::stringstream ss;
  write_edgelist(ss, g);
  const auto h = parse_snap_edgelist(ss);
  CHECK(h.vertex_count == 50);
  CHECK(h.edges == g.edges);
}

TEST_CASE("synthetic graphs are simple with the requested size") {
  const auto g = generate_synthetic(200, 700, 9);
  CHECK(g.vertex_count == 200);
  CHECK(g.edges.size() == 700);
  for (auto [u, v] : g.edges) CHECK(u < v);
  CHECK(std::adjacent_find(g.edges.begin(), g.edges.end()) == g.edges.end());
  CHECK(generate_synthetic(200, 700, 9).edges == g.edges);
  CHECK_THROWS(generate_synthetic(3, 4, 1));
}

TEST_CASE("augmentation") {
  const auto g = generate_synthetic(100, 300, 2);
  AugmentParams p;
  p.seed = 77;
  p.remote_ratio = 1.0;
  const auto same = augment(g, p);
  for (const auto& e : same.partnership_edges()) CHECK(e.remote == e.onsite);

  p.remote_ratio = 0.5;
  const auto half = augment(g, p);
  const auto half2 = augment(g, p);
  for (std::size_t i = 0; i < half.partnership_edges().size(); ++i) {
    const auto& e = half.partnership_edges()[i];
    CHECK(e.remote == 0.5 * e.onsite);
    CHECK(e.onsite == same.partnership_edges()[i].onsite);
    CHECK(e.onsite == half2.partnership_edges()[i].onsite);
    CHECK(half.contact_edges()[i].sigma == same.contact_edges()[i].sigma);
    CHECK(e.onsite >= p.onsite_low);
    CHECK(e.onsite <= p.onsite_high);
    CHECK(half.contact_edges()[i].sigma >= p.sigma_low);
    CHECK(half.contact_edges()[i].sigma <= p.sigma_high);
  }
  for (VertexId v = 0; v < 100; ++v) {
    CHECK(half.skills(v) == same.skills(v));
    CHECK(half.skills(v).size() >= 1);
    CHECK(half.skills(v).size() <= 3);
  }

  p.remote_ratio = 0.0;
  CHECK_FALSE(valid(p));
  CHECK_THROWS(augment(g, p));
}

TEST_CASE("instances nest in the number of required skills") {
  const auto g = generate_synthetic(400, 1200, 3);
  const auto net = augment(g, {});
  InstanceParams ip;
  ip.seed = 5;
  ip.required_skills = 5;
  const auto a = make_instance(net, ip);
  ip.required_skills = 15;
  const auto b = make_instance(net, ip);
  CHECK(a.required_skills.size() == 5);
  CHECK(b.required_skills.size() == 15);
  CHECK(std::includes(b.required_skills.begin(), b.required_skills.end(),
                      a.required_skills.begin(), a.required_skills.end()));
  CHECK(a.seeds.size() == 4);
  CHECK(a.budget == 2.0);
  CHECK(validate(a).ok());
}

TEST_CASE("solver names round trip") {
  for (SolverKind k : {SolverKind::kGria, SolverKind::kSkillGreedy,
                       SolverKind::kRandomFeasible, SolverKind::kCollabGreedy}) {
    CHECK(solver_from_string(to_string(k)) == k);
  }
  CHECK_FALSE(solver_from_string("nope"));
}

TEST_CASE("skill greedy takes a dominant cover alone") {
  ProblemInstance inst;
  inst.network = TwoLayerNetwork(3, 3, {}, {}, {{0}, {0, 1, 2}, {2}});
  inst.required_skills = {0, 1, 2};
  inst.budget = 1.0;
  const auto r = baseline_skill_greedy(inst, {});
  CHECK(r.onsite == VertexSet{1});
  CHECK(r.feasible);
}

TEST_CASE("baselines are feasible and never beat the oracle") {
  std::mt19937_64 rng(401);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto best = testing::naive_optimum(inst);
    for (SolverKind k : {SolverKind::kSkillGreedy, SolverKind::kRandomFeasible,
                         SolverKind::kCollabGreedy}) {
      const auto r = run_solver(k, inst, {});
      if (!r.feasible) continue;
      ++checked;
      REQUIRE(best);
      CHECK(testing::naive_covers(inst.network, r.onsite, inst.required_skills));
      CHECK(testing::naive_risk(inst.network, r.onsite, inst.seeds) <=
            inst.budget + 1e-9);
      CHECK(r.alpha_value <= *best + 1e-9);
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("sweep rows, aggregates and CSV round trip") {
  const auto g = generate_synthetic(300, 800, 6);
  SweepSpec spec;
  spec.variable = SweepVariable::kRemoteRatio;
  spec.values = {0.5, 0.6, 0.7, 0.8, 0.9};
  spec.repetitions = 3;
  spec.solvers = {SolverKind::kGria, SolverKind::kSkillGreedy};
  spec.instance.required_skills = 5;
  spec.mc_samples = 50;
  const auto rows = run_sweep(spec, g);
  const auto data = std::count_if(rows.begin(), rows.end(),
                                  [](const SweepRow& r) { return !r.aggregate; });
  CHECK(data == 30);
  CHECK(rows.size() == 40);
  // Ordered by solver, value, repetition.
  CHECK(rows[0].solver == "gria");
  CHECK(rows[0].value == 0.5);
  CHECK(rows[1].rep == 1);
  CHECK(rows[15].solver == "skill_greedy");
  for (const auto& r : rows) {
    if (!r.aggregate) CHECK((r.feasible == 1) == r.alpha.has_value());
  }

  std::stringstream ss;
  write_sweep_csv(ss, rows);
  const std::string text = ss.str();
  CHECK(text.rfind(kSweepCsvHeader, 0) == 0);
  const auto back = read_sweep_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].aggregate == rows[i].aggregate);
    CHECK(back[i].solver == rows[i].solver);
    CHECK(back[i].value == rows[i].value);
    CHECK(back[i].rep == rows[i].rep);
    CHECK(back[i].seed == rows[i].seed);
    CHECK(back[i].feasible == rows[i].feasible);
    CHECK(back[i].alpha == rows[i].alpha);
    CHECK(back[i].alpha_std == rows[i].alpha_std);
    CHECK(back[i].risk == rows[i].risk);
    CHECK(back[i].risk_std == rows[i].risk_std);
    CHECK(back[i].onsite_size == rows[i].onsite_size);
    CHECK(back[i].wall_ms == rows[i].wall_ms);
  }
}

TEST_CASE("sweep over R parses back and does not depend on thread count") {
  const auto g = generate_synthetic(300, 800, 7);
  SweepSpec spec;
  spec.variable = SweepVariable::kRequiredSkills;
  spec.values = {5, 10, 15};
  spec.repetitions = 2;
  spec.solvers = {SolverKind::kGria, SolverKind::kCollabGreedy};
  spec.mc_samples = 50;

  auto run_with = [&](const char* threads) {
    ::setenv("RSHWC_THREADS", threads, 1);
    std::stringstream ss;
    write_sweep_csv(ss, run_sweep(spec, g));
    return strip_wall_time(ss.str());
  };
  const auto one = run_with("1");
  const auto three = run_with("3");
  ::unsetenv("RSHWC_THREADS");
  CHECK(one == three);

  std::istringstream in(one.substr(0, 0) + std::string(kSweepCsvHeader) + "\n" +
                        "data,gria,R,5,0,1,0,,,,,0,1.5\n");
  const auto rows = read_sweep_csv(in);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].alpha.has_value());
  CHECK(rows[0].wall_ms == 1.5);
}

TEST_CASE("thread limit honours the environment") {
  ::setenv("RSHWC_THREADS", "2", 1);
  CHECK(thread_limit() == 2);
  ::setenv("RSHWC_THREADS", "0", 1);
  CHECK(thread_limit() >= 1);
  ::unsetenv("RSHWC_THREADS");
}
