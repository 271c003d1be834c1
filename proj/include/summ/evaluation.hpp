#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "summ/search.hpp"

namespace summ {

struct SplitSpec {
  double train = 0.70;
  double dev = 0.15;
  double test = 0.15;
  std::uint64_t seed = 0;

  void validate() const;  // fractions positive, sum 1 within 1e-9
};

struct SplitResult {
  EventDataset train;
  EventDataset dev;
  EventDataset test;
};

// Whole sequences are assigned to splits by seeded shuffle; sizes are
// floor(K·train), floor(K·dev), remainder. Labels missing from any split are
// dropped everywhere (events deleted, order preserved, empty sequences
// removed); the surviving alphabet keeps its canonical order.
SplitResult split_dataset(const EventDataset& dataset, const SplitSpec& spec);

struct HyperGrid {
  std::vector<double> alphas{0.1, 1, 5, 10};
  std::vector<std::int32_t> look_backs{1, 5, 10};  // shared across labels
  std::vector<double> gammas{0.1, 0.5, 1};

  void validate() const;
};

struct GridChoice {
  double alpha = 0;
  std::int32_t look_back = 0;
  double gamma = 0;
  double dev_log_likelihood = 0;
  SummModel model;  // learned on train at the chosen point
};

// Learns on train at every grid point, scores dev log likelihood with the
// learned model, and returns the argmax; ties go to smaller κ, then smaller
// γ, then smaller α.
GridChoice grid_search(const EventDataset& train, const EventDataset& dev,
                       const TargetVariable& target, const HyperGrid& grid,
                       SummaryKind kind);

// Σ over test positions of log θ̂_{state(l_i)|summarize(i)}; negative log
// loss reported as-is (a log likelihood). The test set must share the
// model's alphabet labels.
double test_log_loss(const SummModel& model, const EventDataset& test);

struct LabelEval {
  std::string label;
  std::string model;                     // "bsumm" | "osumm" | "mc-<k>"
  double alpha = 0;
  std::optional<std::int32_t> look_back;
  std::optional<double> gamma;
  std::vector<std::string> influencers;  // empty for MC baselines
  double dev_log_likelihood = 0;
  double test_log_likelihood = 0;
};

struct EvalReport {
  std::string model;
  std::vector<std::string> retained_labels;
  std::vector<std::string> labels_of_interest;
  std::vector<LabelEval> per_label;
  double macro_avg_test_log_likelihood = 0;
};

// k-th order Markov chain baseline realized as a KGRAM summary over the full
// alphabet (k = 0 is the marginal model): α tuned on dev, refit on
// train+dev, no structure search.
LabelEval markov_chain_baseline(const EventDataset& train, const EventDataset& dev,
                                const EventDataset& test, const TargetVariable& target,
                                std::int32_t order, const std::vector<double>& alpha_grid);

struct EvalConfig {
  SummaryKind kind = SummaryKind::binary;
  bool markov_baseline = false;     // when set, `order` replaces structure search
  std::int32_t order = 1;
  HyperGrid grid;
  SplitSpec split;
  // Empty: every retained label is of interest.
  std::vector<std::string> labels_of_interest;
};

// Full protocol: split, per-label grid search (or MC baseline), refit on
// train+dev at the chosen hyperparameters, test log loss, macro average
// over labels of interest.
EvalReport evaluate_dataset(const EventDataset& dataset, const EvalConfig& config);

// Aligned-column text rendering of the report (one row per label plus the
// macro average).
std::string format_eval_table(const EvalReport& report);

}  // namespace summ
