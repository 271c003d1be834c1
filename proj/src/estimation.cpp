#include "summ/estimation.hpp"

#include <cmath>
#include <numeric>

namespace summ {

void SummaryStats::add(const SummaryState& state, int target_state, std::int64_t n) {
  if (target_state < 0 || target_state >= n_states_)
    throw InputError("target state index out of range");
  auto [it, inserted] = counts_.try_emplace(state);
  if (inserted) it->second.assign(static_cast<std::size_t>(n_states_), 0);
  it->second[static_cast<std::size_t>(target_state)] += n;
  total_ += n;
}

std::int64_t SummaryStats::state_total(const SummaryState& state) const {
  auto it = counts_.find(state);
  if (it == counts_.end()) return 0;
  return std::accumulate(it->second.begin(), it->second.end(), std::int64_t(0));
}

void SummaryStats::merge(const SummaryStats& other) {
  if (!(other.spec_ == spec_) || other.n_states_ != n_states_)
    throw InternalError("merging summary statistics from different models");
  for (const auto& [state, row] : other.counts_) {
    auto [it, inserted] = counts_.try_emplace(state);
    if (inserted) it->second.assign(static_cast<std::size_t>(n_states_), 0);
    for (std::size_t x = 0; x < row.size(); ++x) it->second[x] += row[x];
  }
  total_ += other.total_;
}

namespace {

// Binary summaries admit an O(|U|) per-position scan: carry each
// influencer's most recent occurrence and compare it against the window
// start instead of rescanning the window.
void count_binary(const Sequence& seq, const TargetVariable& target, const SummarySpec& spec,
                  SummaryStats& stats) {
  const std::size_t n_inf = spec.influencers.size();
  std::vector<std::int64_t> last_seen(n_inf, 0);  // 0 = never
  SummaryState state{SummaryKind::binary, std::vector<std::int32_t>(n_inf)};

  for (std::int64_t pos = 1; pos <= seq.length(); ++pos) {
    for (std::size_t j = 0; j < n_inf; ++j) {
      const LookBack& lb = spec.look_backs[j];
      const std::int64_t start = lb ? std::max<std::int64_t>(1, pos - *lb) : 1;
      state.values[j] = (last_seen[j] >= start) ? 1 : 0;
    }
    stats.add(state, target.state_of(seq.at(pos)));
    const LabelId l = seq.at(pos);
    for (std::size_t j = 0; j < n_inf; ++j)
      if (spec.influencers[j] == l) last_seen[j] = pos;
  }
}

void count_generic(const Sequence& seq, const TargetVariable& target, const SummarySpec& spec,
                   SummaryStats& stats) {
  for (std::int64_t pos = 1; pos <= seq.length(); ++pos)
    stats.add(summarize(spec, seq, pos), target.state_of(seq.at(pos)));
}

}  // namespace

SummaryStats count_statistics(const EventDataset& dataset, const TargetVariable& target,
                              const SummarySpec& spec) {
  spec.validate(dataset.alphabet());
  SummaryStats stats(spec, target.n_states());
  for (const auto& seq : dataset.sequences()) {
    if (spec.kind == SummaryKind::binary)
      count_binary(seq, target, spec, stats);
    else
      count_generic(seq, target, spec, stats);
  }
  return stats;
}

ParameterTable estimate_parameters(const SummaryStats& stats, double alpha) {
  if (!(alpha > 0)) throw InputError("prior strength alpha must be > 0");
  ParameterTable table;
  table.spec_ = stats.spec();
  table.n_states_ = stats.n_states();
  table.alpha_ = alpha;
  table.uniform_ = 1.0 / stats.n_states();
  const double alpha_s = alpha * stats.n_states();
  table.rows_.reserve(stats.counts().size());
  for (const auto& [state, row] : stats.counts()) {
    const auto n_s = std::accumulate(row.begin(), row.end(), std::int64_t(0));
    std::vector<double> probs(row.size());
    for (std::size_t x = 0; x < row.size(); ++x)
      probs[x] = (alpha + static_cast<double>(row[x])) / (alpha_s + static_cast<double>(n_s));
    table.rows_.emplace(state, std::move(probs));
  }
  return table;
}

double ParameterTable::prob(int target_state, const SummaryState& state) const {
  if (target_state < 0 || target_state >= n_states_)
    throw InputError("target state index out of range");
  auto it = rows_.find(state);
  if (it != rows_.end()) return it->second[static_cast<std::size_t>(target_state)];
  if (!in_domain(spec_, state))
    throw InternalError("summary state outside this model's domain");
  return uniform_;
}

double log_likelihood(const SummaryStats& stats, const ParameterTable& params) {
  double ll = 0;
  for (const auto& [state, row] : stats.counts()) {
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (row[x] == 0) continue;
      ll += static_cast<double>(row[x]) * std::log(params.prob(static_cast<int>(x), state));
    }
  }
  return ll;
}

ScoreReport bic_score(const SummaryStats& stats, const ParameterTable& params,
                      double gamma, std::int64_t total_events) {
  if (!(gamma > 0)) throw InputError("penalty weight gamma must be > 0");
  if (total_events < 1) throw InputError("total event count must be >= 1");
  ScoreReport report;
  report.log_likelihood = log_likelihood(stats, params);
  const std::uint64_t domain = domain_size(stats.spec());
  if (__builtin_mul_overflow(static_cast<std::uint64_t>(stats.n_states() - 1), domain,
                             &report.free_parameters))
    throw SizingError("free-parameter count overflows 64 bits (domain size " +
                      std::to_string(domain) + ")");
  report.penalty_gamma = gamma;
  report.score = report.log_likelihood -
                 gamma * static_cast<double>(report.free_parameters) *
                     std::log(static_cast<double>(total_events)) / 2.0;
  return report;
}

}  // namespace summ
