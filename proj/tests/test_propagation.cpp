#include <numeric>
#include <random>

#include "doctest.h"
#include "rshwc/propagation.hpp"
#include "rshwc/risk_model.hpp"
#include "support.hpp"

using namespace rshwc;
using testing::naive_risk;

namespace {

TwoLayerNetwork contact_only(std::size_t n, std::vector<ContactEdge> edges) {
  return TwoLayerNetwork(n, 1, std::move(edges), {},
                         std::vector<SkillSet>(n));
}

VertexSet random_subset(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution keep(p);
  VertexSet out;
  for (VertexId v = 0; v < n; ++v) {
    if (keep(rng)) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("exact risk on hand-checked graphs") {
  const auto path = contact_only(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(risk_exact(path, VertexSet{0, 1, 2}, VertexSet{0}).mean == 3.0);
  CHECK(risk_exact(path, VertexSet{0, 2}, VertexSet{0}).mean == 1.0);

  const auto edge = contact_only(2, {{0, 1, 0.5}});
  const auto r = risk_exact(edge, VertexSet{0, 1}, VertexSet{0});
  CHECK(r.mean == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r.exact);
  CHECK(r.std_error == 0.0);

  const auto silent =
      contact_only(4, {{0, 1, 0.0}, {1, 2, 0.0}, {2, 3, 0.0}, {0, 3, 0.0}});
  CHECK(risk_exact(silent, VertexSet{0, 1, 2}, VertexSet{0, 2, 3}).mean == 2.0);

  // Seeds outside the population do not infect it.
  CHECK(risk_exact(path, VertexSet{1, 2}, VertexSet{0}).mean == 0.0);
}

TEST_CASE("exact risk matches full live-edge enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto u = random_subset(rng, inst.network.vertex_count(), 0.7);
    const double got = risk_exact(inst.network, u, inst.seeds).mean;
    CHECK(got == doctest::Approx(naive_risk(inst.network, u, inst.seeds))
                     .epsilon(1e-12));
  }
}

TEST_CASE("parallel contact edges combine as independent trials") {
  const auto net = contact_only(2, {{0, 1, 0.5}, {1, 0, 0.5}});
  CHECK(risk_exact(net, VertexSet{0, 1}, VertexSet{0}).mean ==
        doctest::Approx(1.75));
}

TEST_CASE("exact risk refuses large subgraphs") {
  std::vector<ContactEdge> edges;
  for (VertexId v = 0; v + 1 < 30; ++v) edges.push_back({v, v + 1, 0.5});
  const auto net = contact_only(30, edges);
  VertexSet all(30);
  std::iota(all.begin(), all.end(), 0u);
  CHECK_THROWS_AS(risk_exact(net, all, VertexSet{0}, 20), TooLargeForExact);
  // sigma in {0, 1} edges do not count toward the threshold.
  std::vector<ContactEdge> certain;
  for (VertexId v = 0; v + 1 < 30; ++v) certain.push_back({v, v + 1, 1.0});
  CHECK(risk_exact(contact_only(30, certain), all, VertexSet{0}, 20).mean == 30.0);
}

TEST_CASE("Monte Carlo estimator basics") {
  PropagationConfig cfg;
  cfg.mc_samples = 10000;
  cfg.rng_seed = 99;
  const auto silent = contact_only(3, {{0, 1, 0.0}, {1, 2, 0.0}});
  const auto r0 = risk_mc(silent, VertexSet{0, 1, 2}, VertexSet{1, 2}, cfg);
  CHECK(r0.mean == 2.0);
  CHECK(r0.std_error == 0.0);
  CHECK_FALSE(r0.exact);

  const auto edge = contact_only(2, {{0, 1, 0.5}});
  const auto r = risk_mc(edge, VertexSet{0, 1}, VertexSet{0}, cfg);
  CHECK(r.samples == 10000);
  CHECK(std::abs(r.mean - 1.5) <= 3.0 * r.std_error);

  CHECK(risk_mc(edge, VertexSet{}, VertexSet{0}, cfg).mean == 0.0);

  const auto again = risk_mc(edge, VertexSet{0, 1}, VertexSet{0}, cfg);
  CHECK(again.mean == r.mean);
  CHECK(again.std_error == r.std_error);
}

TEST_CASE("risk_auto dispatches on the stochastic edge count") {
  PropagationConfig cfg;
  const auto small = contact_only(4, {{0, 1, 0.3}, {1, 2, 0.3}, {2, 3, 0.3}});
  CHECK(risk_auto(small, VertexSet{0, 1, 2, 3}, VertexSet{0}, cfg).exact);

  std::vector<ContactEdge> edges;
  const VertexId n = 600;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 0.05});
  for (VertexId v = 0; v + 2 < n && edges.size() < 1000; ++v) {
    edges.push_back({v, v + 2, 0.05});
  }
  VertexSet all(n);
  std::iota(all.begin(), all.end(), 0u);
  const auto big = contact_only(n, edges);
  CHECK_FALSE(risk_auto(big, all, VertexSet{0}, cfg).exact);

  const auto empty = risk_auto(small, VertexSet{}, VertexSet{0}, cfg);
  CHECK(empty.mean == 0.0);
  CHECK(empty.exact);
}

TEST_CASE("marginal risk examples") {
  PropagationConfig cfg;
  const auto silent = contact_only(3, {{0, 1, 0.0}, {1, 2, 0.0}});
  CHECK(marginal_risk(silent, VertexSet{0}, VertexSet{1}, 1, cfg) == 1.0);
  CHECK(marginal_risk(silent, VertexSet{0}, VertexSet{0}, 2, cfg) == 0.0);

  const auto star = contact_only(3, {{0, 1, 1.0}, {0, 2, 1.0}});
  CHECK(marginal_risk(star, VertexSet{1, 2}, VertexSet{1, 2}, 0, cfg) == 1.0);

  cfg.exact_threshold = 0;  // force the sampled path
  cfg.mc_samples = 500;
  const auto edge = contact_only(2, {{0, 1, 0.5}});
  const double m = marginal_risk(edge, VertexSet{0}, VertexSet{0}, 1, cfg);
  CHECK(m >= 0.0);
  CHECK(m <= 1.0);
}

TEST_CASE("estimates stay within |S and U| and |U|") {
  std::mt19937_64 rng(8);
  PropagationConfig cfg;
  cfg.mc_samples = 300;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto u = random_subset(rng, inst.network.vertex_count(), 0.6);
    std::size_t seeded = 0;
    for (VertexId s : inst.seeds) {
      seeded += std::binary_search(u.begin(), u.end(), s) ? 1 : 0;
    }
    cfg.rng_seed = rng();
    for (const auto& r : {risk_exact(inst.network, u, inst.seeds),
                          risk_mc(inst.network, u, inst.seeds, cfg)}) {
      CHECK(r.mean >= static_cast<double>(seeded) - 1e-12);
      CHECK(r.mean <= static_cast<double>(u.size()) + 1e-12);
    }
  }
}

TEST_CASE("exact risk is monotone in the population and the seeds") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto big = random_subset(rng, inst.network.vertex_count(), 0.8);
    VertexSet small;
    for (VertexId v : big) {
      if (rng() % 2) small.push_back(v);
    }
    const double rb = risk_exact(inst.network, big, inst.seeds).mean;
    const double rs = risk_exact(inst.network, small, inst.seeds).mean;
    CHECK(rs <= rb + 1e-12);
    VertexSet fewer(inst.seeds.begin(), inst.seeds.begin() + 1);
    CHECK(risk_exact(inst.network, big, fewer).mean <= rb + 1e-12);
  }
}

TEST_CASE("scenario counts are monotone per sample under shared scenarios") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const std::size_t n = inst.network.vertex_count();
    ScenarioPool pool(inst.network, 64, rng());
    const auto big = random_subset(rng, n, 0.8);
    VertexSet small;
    for (VertexId v : big) {
      if (rng() % 2) small.push_back(v);
    }
    const auto seeds = testing::mask_of(n, inst.seeds);
    const auto cb = pool.infected_counts(testing::mask_of(n, big), seeds);
    const auto cs = pool.infected_counts(testing::mask_of(n, small), seeds);
    for (std::size_t k = 0; k < cb.size(); ++k) CHECK(cs[k] <= cb[k]);
  }
}

TEST_CASE("sampled risk model tracks a from-scratch evaluation") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    ProblemInstance inst = testing::random_tiny_instance(rng);
    const std::size_t n = inst.network.vertex_count();
    PropagationConfig cfg;
    cfg.mc_samples = 40;
    cfg.rng_seed = rng();
    SampledRiskModel model(inst, cfg);
    const auto seeds = testing::mask_of(n, inst.seeds);
    std::vector<char> in(n, 0);
    auto scratch = [&](const std::vector<char>& mask) {
      const auto counts = model.pool().infected_counts(mask, seeds);
      return summarize_counts(counts).mean;
    };
    for (int step = 0; step < 40; ++step) {
      const auto v = static_cast<VertexId>(rng() % n);
      if (in[v]) {
        model.remove(v);
        in[v] = 0;
      } else {
        auto grown = in;
        grown[v] = 1;
        CHECK(model.risk_with(v) == doctest::Approx(scratch(grown)));
        model.add(v);
        in[v] = 1;
      }
      CHECK(model.risk() == doctest::Approx(scratch(in)));
      const auto drops = model.removal_drops();
      for (VertexId u = 0; u < n; ++u) {
        if (!in[u]) {
          CHECK(drops[u] == 0.0);
          continue;
        }
        auto shrunk = in;
        shrunk[u] = 0;
        CHECK(drops[u] == doctest::Approx(scratch(in) - scratch(shrunk)));
      }
    }
  }
}

TEST_CASE("exact risk model agrees with enumeration") {
  std::mt19937_64 rng(61);
  testing::TinyParams p;
  p.max_contact_edges = 10;
  for (int trial = 0; trial < 40; ++trial) {
    ProblemInstance inst = testing::random_tiny_instance(rng, p);
    const std::size_t n = inst.network.vertex_count();
    ExactRiskModel model(inst, 20);
    VertexSet in;
    for (int step = 0; step < 12; ++step) {
      const auto v = static_cast<VertexId>(rng() % n);
      if (model.contains(v)) {
        model.remove(v);
        in.erase(std::find(in.begin(), in.end(), v));
      } else {
        VertexSet grown = in;
        grown.push_back(v);
        normalize_set(grown);
        CHECK(model.risk_with(v) ==
              doctest::Approx(naive_risk(inst.network, grown, inst.seeds)));
        model.add(v);
        in = grown;
      }
      CHECK(model.risk() ==
            doctest::Approx(naive_risk(inst.network, in, inst.seeds)));
      CHECK(model.members() == in);
    }
  }
}

TEST_CASE("make_risk_model picks exact only under the threshold") {
  std::mt19937_64 rng(71);
  testing::TinyParams p;
  p.max_contact_edges = 5;
  const auto inst = testing::random_tiny_instance(rng, p);
  PropagationConfig cfg;
  CHECK(make_risk_model(inst, cfg)->exact());
  cfg.exact_threshold = 0;
  const bool any_stochastic = [&] {
    for (const auto& e : inst.network.contact_edges()) {
      if (e.sigma > 0.0 && e.sigma < 1.0) return true;
    }
    return false;
  }();
  CHECK(make_risk_model(inst, cfg)->exact() == !any_stochastic);
}
