#ifndef RSHWC_RISK_MODEL_HPP_
#define RSHWC_RISK_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rshwc/network.hpp"
#include "rshwc/propagation.hpp"

namespace rshwc {

/// Risk of a mutable onsite set, with coupled what-if queries.
///
/// All queries on one model share the same randomness, so comparisons
/// between candidate moves are not perturbed by sampling noise.
class RiskModel {
 public:
  virtual ~RiskModel() = default;

  virtual void add(VertexId v) = 0;
  virtual void remove(VertexId v) = 0;

  virtual double risk() const = 0;
  /// Risk of the current set plus v (v must be offsite).
  virtual double risk_with(VertexId v) = 0;
  /// Per vertex: risk() minus the risk without that member; 0 for offsite.
  virtual std::vector<double> removal_drops() = 0;

  virtual RiskEstimate estimate() const = 0;
  virtual bool exact() const = 0;

  bool contains(VertexId v) const { return in_set_[v] != 0; }
  VertexSet members() const;

 protected:
  explicit RiskModel(std::size_t n) : in_set_(n, 0) {}
  std::vector<char> in_set_;
};

/// Exact enumeration with a per-subset memo. Needs every subset of the whole
/// network to be within the exact threshold.
class ExactRiskModel final : public RiskModel {
 public:
  ExactRiskModel(const ProblemInstance& instance, std::size_t exact_threshold);

  void add(VertexId v) override;
  void remove(VertexId v) override;
  double risk() const override { return current_; }
  double risk_with(VertexId v) override;
  std::vector<double> removal_drops() override;
  RiskEstimate estimate() const override { return {current_, 0.0, 0, true}; }
  bool exact() const override { return true; }

 private:
  double evaluate(const std::vector<char>& mask);

  const ProblemInstance* instance_;
  std::size_t threshold_;
  std::unordered_map<std::string, double> memo_;
  double current_ = 0.0;
};

/// Monte Carlo over a fixed ScenarioPool. Each scenario keeps a union-find
/// over the live-edge subgraph induced by the onsite set; a component is
/// infected iff it holds a seed. Additions merge components, removals rebuild
/// only the component that lost the vertex. What-if additions are cached per
/// vertex and invalidated only around components that changed.
class SampledRiskModel final : public RiskModel {
 public:
  SampledRiskModel(const ProblemInstance& instance,
                   const PropagationConfig& config);

  void add(VertexId v) override;
  void remove(VertexId v) override;
  double risk() const override;
  double risk_with(VertexId v) override;
  std::vector<double> removal_drops() override;
  RiskEstimate estimate() const override;
  bool exact() const override { return false; }

  const ScenarioPool& pool() const { return pool_; }

 private:
  std::uint32_t find(std::size_t k, std::uint32_t v);
  void unite(std::size_t k, std::uint32_t a, std::uint32_t b);
  std::int64_t addition_gain(VertexId v);
  void mark_around(std::size_t k, std::uint32_t any_member);

  std::size_t n_;
  ScenarioPool pool_;
  std::vector<char> seed_;
  // Flattened [sample * n + vertex].
  std::vector<std::uint32_t> parent_, size_, seeds_, next_;
  std::vector<std::uint32_t> count_;  // infected per scenario
  std::int64_t total_ = 0;
  std::vector<std::int64_t> gain_cache_;
  std::vector<char> dirty_;
  std::vector<std::uint32_t> scratch_;
};

/// Exact model when the whole network is under the exact threshold,
/// sampled model otherwise.
std::unique_ptr<RiskModel> make_risk_model(const ProblemInstance& instance,
                                           const PropagationConfig& config);

}  // namespace rshwc

#endif  // RSHWC_RISK_MODEL_HPP_
