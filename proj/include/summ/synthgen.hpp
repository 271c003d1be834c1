#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "summ/search.hpp"

namespace summ {

// One bit of the generator's conditioning key: whether `label` occurred
// within the trailing `look_back` positions.
struct GenerativeCondition {
  LabelId label = 0;
  std::int32_t look_back = 1;

  friend bool operator==(const GenerativeCondition&, const GenerativeCondition&) = default;
};

// Ground-truth dynamics: at every position the next label is drawn from
// table[row], where row packs the condition bits (condition i is bit i).
// The conditions are the union of all labels' influencing sets, so each
// label's probability may read any subset of them.
struct GenerativeSpec {
  Alphabet alphabet;
  std::vector<GenerativeCondition> conditions;
  std::vector<std::vector<double>> table;  // [2^|conditions|][M], rows sum to 1
  // Per-label ground-truth influencing sets (metadata for recovery scoring).
  std::map<std::string, std::vector<std::string>> influencing_sets;
  std::int64_t sequence_length = 10;   // L
  std::int64_t sequence_count = 1;     // K
  std::uint64_t seed = 0;

  void validate() const;  // throws InputError / ConfigError
};

// Samples sequence_count sequences of sequence_length events left to right;
// one SplitMix64 stream seeded with spec.seed drives everything, so identical
// specs produce identical datasets.
EventDataset generate(const GenerativeSpec& spec);

// Built-in generative scenarios for benchmarks. "b1": 5 labels {A..E};
// A and B each conditioned on (B within 3, C within 3); C, D, E positionless.
GenerativeSpec builtin_spec(std::string_view name);

struct RecoveryPoint {
  std::int64_t sequences = 0;  // K
  double mean_f1 = 0;
  double std_error = 0;        // Monte Carlo standard error of the mean
  std::vector<double> runs;    // per-run F1
};

// Influencing-set recovery experiment: for each K and run, generate a fresh
// dataset (seed derived per (K, run): derive_seed(seed,"recover",K) + run),
// search for the target's influencers, and score F1 against the spec's
// ground truth.
std::vector<RecoveryPoint> recovery_experiment(const GenerativeSpec& base,
                                               const std::vector<std::int64_t>& k_values,
                                               int runs, const SearchConfig& config,
                                               const std::string& target_label,
                                               std::uint64_t seed);

}  // namespace summ
