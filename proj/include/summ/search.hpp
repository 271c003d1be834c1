#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summ/estimation.hpp"

namespace summ {

struct SearchConfig {
  SummaryKind kind = SummaryKind::binary;
  LookBack look_back = 1;          // shared across influencers
  double prior_alpha = 1.0;
  double penalty_gamma = 1.0;
  // Candidate labels; defaults to the full alphabet (self-influence allowed).
  std::optional<std::vector<LabelId>> candidate_pool;
  // When false, the target's own labels are removed from the pool.
  bool allow_self_loop = true;
  // Off by default: exactly one forward and one backward sweep.
  bool iterate_to_convergence = false;
};

struct TraceEntry {
  std::string phase;                // "forward" | "backward"
  LabelId candidate = -1;
  std::vector<LabelId> proposed;    // candidate set that was scored
  double score = 0;
  bool accepted = false;
};

// A fitted summary Markov model: target variable, final summary spec (its
// influencers are the learned set), smoothed parameters, and the score of
// the fit. Carries the alphabet it was fitted against so later evaluation
// can reject foreign datasets.
struct SummModel {
  Alphabet alphabet;
  TargetVariable target;
  SummarySpec spec;
  ParameterTable params;
  ScoreReport score;

  const std::vector<LabelId>& influencers() const { return spec.influencers; }
};

// ComputeScore for a fixed influencing set: count, estimate, and score.
SummModel fit_model(const EventDataset& dataset, const TargetVariable& target,
                    const SummarySpec& spec, double alpha, double gamma);

// Greedy forward/backward score search for the influencing set. The best
// score starts at the empty set's score; a candidate is accepted only on
// strict improvement. Sweeps iterate the canonical label order over a
// snapshot taken at sweep start.
SummModel influencer_search(const EventDataset& dataset, const TargetVariable& target,
                            const SearchConfig& config,
                            std::vector<TraceEntry>* trace = nullptr);

// Scores every subset of the candidate pool; ties broken by smaller
// cardinality, then canonical order. Throws SizingError when the pool
// exceeds `max_pool_size`.
SummModel exhaustive_search(const EventDataset& dataset, const TargetVariable& target,
                            const SearchConfig& config, int max_pool_size = 6);

// Harmonic mean of precision and recall between label sets; 1 when both are
// empty, 0 when exactly one is.
double set_f1(const std::vector<LabelId>& estimated, const std::vector<LabelId>& truth);

}  // namespace summ
