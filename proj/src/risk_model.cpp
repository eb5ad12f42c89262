#include "rshwc/risk_model.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rshwc {

VertexSet RiskModel::members() const {
  VertexSet out;
  for (VertexId v = 0; v < in_set_.size(); ++v) {
    if (in_set_[v]) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExactRiskModel

ExactRiskModel::ExactRiskModel(const ProblemInstance& instance,
                               std::size_t exact_threshold)
    : RiskModel(instance.network.vertex_count()),
      instance_(&instance),
      threshold_(exact_threshold) {
  std::vector<char> all(in_set_.size(), 1);
  if (stochastic_edge_count(instance.network, all) > threshold_) {
    throw TooLargeForExact("network exceeds the exact threshold");
  }
}

double ExactRiskModel::evaluate(const std::vector<char>& mask) {
  std::string key(mask.begin(), mask.end());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  VertexSet population;
  for (VertexId v = 0; v < mask.size(); ++v) {
    if (mask[v]) population.push_back(v);
  }
  double r = risk_exact(instance_->network, population, instance_->seeds,
                        threshold_)
                 .mean;
  memo_.emplace(std::move(key), r);
  return r;
}

void ExactRiskModel::add(VertexId v) {
  if (in_set_[v]) throw std::logic_error("vertex already onsite");
  in_set_[v] = 1;
  current_ = evaluate(in_set_);
}

void ExactRiskModel::remove(VertexId v) {
  if (!in_set_[v]) throw std::logic_error("vertex not onsite");
  in_set_[v] = 0;
  current_ = evaluate(in_set_);
}

double ExactRiskModel::risk_with(VertexId v) {
  in_set_[v] = 1;
  double r = evaluate(in_set_);
  in_set_[v] = 0;
  return r;
}

std::vector<double> ExactRiskModel::removal_drops() {
  std::vector<double> drops(in_set_.size(), 0.0);
  for (VertexId v = 0; v < in_set_.size(); ++v) {
    if (!in_set_[v]) continue;
    in_set_[v] = 0;
    drops[v] = current_ - evaluate(in_set_);
    in_set_[v] = 1;
  }
  return drops;
}

// ---------------------------------------------------------------------------
// SampledRiskModel

SampledRiskModel::SampledRiskModel(const ProblemInstance& instance,
                                   const PropagationConfig& config)
    : RiskModel(instance.network.vertex_count()),
      n_(instance.network.vertex_count()),
      pool_(instance.network, std::max<std::size_t>(config.mc_samples, 1),
            config.rng_seed),
      seed_(membership_mask(n_, instance.seeds)) {
  const std::size_t cells = pool_.samples() * n_;
  parent_.resize(cells);
  size_.assign(cells, 1);
  seeds_.assign(cells, 0);
  next_.resize(cells);
  count_.assign(pool_.samples(), 0);
  gain_cache_.assign(n_, 0);
  dirty_.assign(n_, 1);
}

std::uint32_t SampledRiskModel::find(std::size_t k, std::uint32_t v) {
  std::uint32_t* parent = parent_.data() + k * n_;
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

void SampledRiskModel::unite(std::size_t k, std::uint32_t a, std::uint32_t b) {
  a = find(k, a);
  b = find(k, b);
  if (a == b) return;
  const std::size_t base = k * n_;
  if (size_[base + a] < size_[base + b]) std::swap(a, b);
  parent_[base + b] = a;
  size_[base + a] += size_[base + b];
  seeds_[base + a] += seeds_[base + b];
  std::swap(next_[base + a], next_[base + b]);
}

void SampledRiskModel::mark_around(std::size_t k, std::uint32_t any_member) {
  const std::uint32_t* next = next_.data() + k * n_;
  std::uint32_t v = any_member;
  do {
    for (VertexId w : pool_.live_neighbors(k, v)) {
      if (!in_set_[w]) dirty_[w] = 1;
    }
    v = next[v];
  } while (v != any_member);
}

std::int64_t SampledRiskModel::addition_gain(VertexId v) {
  std::int64_t gain = 0;
  for (std::size_t k = 0; k < pool_.samples(); ++k) {
    scratch_.clear();
    bool infected = seed_[v] != 0;
    for (VertexId w : pool_.live_neighbors(k, v)) {
      if (!in_set_[w]) continue;
      std::uint32_t r = find(k, w);
      if (std::find(scratch_.begin(), scratch_.end(), r) != scratch_.end()) {
        continue;
      }
      scratch_.push_back(r);
      if (seeds_[k * n_ + r] > 0) infected = true;
    }
    if (!infected) continue;
    gain += 1;
    for (std::uint32_t r : scratch_) {
      if (seeds_[k * n_ + r] == 0) gain += size_[k * n_ + r];
    }
  }
  return gain;
}

void SampledRiskModel::add(VertexId v) {
  if (in_set_[v]) throw std::logic_error("vertex already onsite");
  in_set_[v] = 1;
  for (std::size_t k = 0; k < pool_.samples(); ++k) {
    const std::size_t base = k * n_;
    parent_[base + v] = v;
    size_[base + v] = 1;
    seeds_[base + v] = seed_[v] ? 1 : 0;
    next_[base + v] = v;
    std::int64_t before = 0;
    scratch_.clear();
    for (VertexId w : pool_.live_neighbors(k, v)) {
      if (!in_set_[w] || w == v) continue;
      std::uint32_t r = find(k, w);
      if (std::find(scratch_.begin(), scratch_.end(), r) != scratch_.end()) {
        continue;
      }
      scratch_.push_back(r);
      if (seeds_[base + r] > 0) before += size_[base + r];
    }
    for (std::uint32_t r : scratch_) unite(k, v, r);
    std::uint32_t root = find(k, v);
    std::int64_t after = seeds_[base + root] > 0 ? size_[base + root] : 0;
    count_[k] = static_cast<std::uint32_t>(count_[k] + (after - before));
    total_ += after - before;
    mark_around(k, v);
  }
}

void SampledRiskModel::remove(VertexId v) {
  if (!in_set_[v]) throw std::logic_error("vertex not onsite");
  std::vector<std::uint32_t> old_members;
  in_set_[v] = 0;
  dirty_[v] = 1;
  for (std::size_t k = 0; k < pool_.samples(); ++k) {
    const std::size_t base = k * n_;
    mark_around(k, v);
    std::uint32_t root = find(k, v);
    const std::int64_t before =
        seeds_[base + root] > 0 ? size_[base + root] : 0;
    old_members.clear();
    std::uint32_t u = v;
    do {
      if (u != v) old_members.push_back(u);
      u = next_[base + u];
    } while (u != v);
    for (std::uint32_t m : old_members) {
      parent_[base + m] = m;
      size_[base + m] = 1;
      seeds_[base + m] = seed_[m] ? 1 : 0;
      next_[base + m] = m;
    }
    for (std::uint32_t m : old_members) {
      for (VertexId w : pool_.live_neighbors(k, m)) {
        if (in_set_[w]) unite(k, m, w);
      }
    }
    std::int64_t after = 0;
    for (std::uint32_t m : old_members) {
      if (find(k, m) == m && seeds_[base + m] > 0) after += size_[base + m];
    }
    parent_[base + v] = v;
    size_[base + v] = 1;
    seeds_[base + v] = 0;
    next_[base + v] = v;
    count_[k] = static_cast<std::uint32_t>(count_[k] + (after - before));
    total_ += after - before;
  }
}

double SampledRiskModel::risk() const {
  return static_cast<double>(total_) / static_cast<double>(pool_.samples());
}

double SampledRiskModel::risk_with(VertexId v) {
  if (dirty_[v]) {
    gain_cache_[v] = addition_gain(v);
    dirty_[v] = 0;
  }
  return static_cast<double>(total_ + gain_cache_[v]) /
         static_cast<double>(pool_.samples());
}

RiskEstimate SampledRiskModel::estimate() const {
  return summarize_counts(count_);
}

std::vector<double> SampledRiskModel::removal_drops() {
  // Per scenario, removing v from an infected component loses v itself, every
  // biconnected piece cut off by v that holds no seed, and the remainder if
  // it holds no seed. Cut pieces come from a lowlink DFS.
  std::vector<std::int64_t> drops(n_, 0);
  std::vector<std::uint32_t> disc(n_), low(n_), sub_size(n_), sub_seeds(n_),
      sep_size(n_), sep_seeds(n_), lost(n_), visit(n_, 0);
  std::vector<std::uint32_t> order;
  struct Frame {
    std::uint32_t v, parent, idx;
  };
  std::vector<Frame> stack;
  std::uint32_t epoch = 0;
  const VertexSet onsite = members();

  for (std::size_t k = 0; k < pool_.samples(); ++k) {
    ++epoch;
    const std::size_t base = k * n_;
    for (VertexId start : onsite) {
      if (visit[start] == epoch) continue;
      const std::uint32_t root = find(k, start);
      if (seeds_[base + root] == 0) continue;
      const std::uint32_t comp_size = size_[base + root];
      const std::uint32_t comp_seeds = seeds_[base + root];
      std::uint32_t timer = 0;
      order.clear();
      auto open = [&](std::uint32_t v, std::uint32_t parent) {
        visit[v] = epoch;
        disc[v] = low[v] = timer++;
        sub_size[v] = 1;
        sub_seeds[v] = seed_[v] ? 1 : 0;
        sep_size[v] = sep_seeds[v] = lost[v] = 0;
        order.push_back(v);
        stack.push_back({v, parent, 0});
      };
      open(start, static_cast<std::uint32_t>(n_));
      while (!stack.empty()) {
        Frame& f = stack.back();
        auto nbrs = pool_.live_neighbors(k, f.v);
        if (f.idx < nbrs.size()) {
          const VertexId w = nbrs[f.idx++];
          if (!in_set_[w] || w == f.parent) continue;
          if (visit[w] == epoch) {
            low[f.v] = std::min(low[f.v], disc[w]);
          } else {
            open(w, f.v);
          }
          continue;
        }
        const std::uint32_t v = f.v, p = f.parent;
        stack.pop_back();
        if (p == n_) continue;
        low[p] = std::min(low[p], low[v]);
        sub_size[p] += sub_size[v];
        sub_seeds[p] += sub_seeds[v];
        if (low[v] >= disc[p]) {
          sep_size[p] += sub_size[v];
          sep_seeds[p] += sub_seeds[v];
          if (sub_seeds[v] == 0) lost[p] += sub_size[v];
        }
      }
      assert(order.size() == comp_size);
      for (std::uint32_t v : order) {
        const std::uint32_t rest_size = comp_size - 1 - sep_size[v];
        const std::uint32_t rest_seeds =
            comp_seeds - (seed_[v] ? 1 : 0) - sep_seeds[v];
        drops[v] += 1 + lost[v] + (rest_seeds == 0 ? rest_size : 0);
      }
    }
  }
  std::vector<double> out(n_, 0.0);
  const double samples = static_cast<double>(pool_.samples());
  for (std::size_t v = 0; v < n_; ++v) {
    out[v] = static_cast<double>(drops[v]) / samples;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::unique_ptr<RiskModel> make_risk_model(const ProblemInstance& instance,
                                           const PropagationConfig& config) {
  std::vector<char> all(instance.network.vertex_count(), 1);
  if (stochastic_edge_count(instance.network, all) <= config.exact_threshold) {
    return std::make_unique<ExactRiskModel>(instance, config.exact_threshold);
  }
  return std::make_unique<SampledRiskModel>(instance, config);
}

}  // namespace rshwc
