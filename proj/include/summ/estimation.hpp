#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "summ/summary.hpp"

namespace summ {

// Counts N(x;s) keyed by summary state, one dense row of target-state counts
// per observed state. N(s) is the row sum.
class SummaryStats {
 public:
  using CountMap = std::unordered_map<SummaryState, std::vector<std::int64_t>, SummaryStateHash>;

  SummaryStats(SummarySpec spec, int n_states)
      : spec_(std::move(spec)), n_states_(n_states) {}

  const SummarySpec& spec() const { return spec_; }
  int n_states() const { return n_states_; }
  const CountMap& counts() const { return counts_; }
  std::int64_t total() const { return total_; }  // positions scanned

  void add(const SummaryState& state, int target_state, std::int64_t n = 1);
  std::int64_t state_total(const SummaryState& state) const;  // N(s)

  // Count-wise addition; both operands must agree on spec and state count.
  void merge(const SummaryStats& other);

 private:
  SummarySpec spec_;
  int n_states_;
  CountMap counts_;
  std::int64_t total_ = 0;
};

// Scans every position of every sequence (position 1 contributes under its
// empty-history summary) and tallies N(state_of(label at i); summarize(i)).
SummaryStats count_statistics(const EventDataset& dataset, const TargetVariable& target,
                              const SummarySpec& spec);

// Dirichlet-smoothed conditional probability table
//   θ̂_{x|s} = (α + N(x;s)) / (n_states·α + N(s)),
// total over the whole summary domain: states never counted fall back to the
// uniform prior estimate 1/n_states.
class ParameterTable {
 public:
  using ProbMap = std::unordered_map<SummaryState, std::vector<double>, SummaryStateHash>;

  double prob(int target_state, const SummaryState& state) const;
  const ProbMap& rows() const { return rows_; }
  const SummarySpec& spec() const { return spec_; }
  int n_states() const { return n_states_; }
  double alpha() const { return alpha_; }
  double uniform_prob() const { return uniform_; }

 private:
  friend ParameterTable estimate_parameters(const SummaryStats&, double);

  SummarySpec spec_;
  int n_states_ = 0;
  double alpha_ = 0;
  double uniform_ = 0;
  ProbMap rows_;
};

ParameterTable estimate_parameters(const SummaryStats& stats, double alpha);

// LL = Σ_x Σ_s N(x;s)·log θ_{x|s}, natural log. States counted but foreign
// to the table's domain raise InternalError.
double log_likelihood(const SummaryStats& stats, const ParameterTable& params);

struct ScoreReport {
  double log_likelihood = 0;
  std::uint64_t free_parameters = 0;  // (n_states - 1) × |Σ_U|
  double penalty_gamma = 0;
  double score = 0;                   // LL − γ·|P|·log(N)/2
};

// Penalized log likelihood; `total_events` is the dataset's N.
ScoreReport bic_score(const SummaryStats& stats, const ParameterTable& params,
                      double gamma, std::int64_t total_events);

}  // namespace summ
