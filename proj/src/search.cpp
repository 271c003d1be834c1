#include "summ/search.hpp"

#include <algorithm>
#include <numeric>

namespace summ {

namespace {

SummarySpec make_spec(SummaryKind kind, std::vector<LabelId> influencers, LookBack look_back,
                      const Alphabet& alphabet) {
  switch (kind) {
    case SummaryKind::binary:
      return SummarySpec::binary(std::move(influencers), look_back);
    case SummaryKind::ordinal:
      return SummarySpec::ordinal(std::move(influencers), look_back);
    case SummaryKind::kgram:
      // The k-gram summary has no free influencing set to search over.
      if (influencers.size() != alphabet.size())
        throw InputError("kgram summaries fix the influencing set to the full alphabet");
      if (!look_back) throw InputError("kgram summaries need a bounded order");
      return SummarySpec::kgram(alphabet, *look_back);
  }
  throw InternalError("unknown summary kind");
}

std::vector<LabelId> resolve_pool(const EventDataset& dataset, const TargetVariable& target,
                                  const SearchConfig& config) {
  std::vector<LabelId> pool;
  if (config.candidate_pool) {
    pool = *config.candidate_pool;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (LabelId id : pool)
      if (!dataset.alphabet().contains(id)) throw InputError("candidate pool label not in alphabet");
  } else {
    pool.resize(dataset.alphabet().size());
    std::iota(pool.begin(), pool.end(), 0);
  }
  if (!config.allow_self_loop) {
    const std::vector<LabelId>& self = target.target_labels();
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [&](LabelId id) {
                                return std::find(self.begin(), self.end(), id) != self.end();
                              }),
               pool.end());
  }
  return pool;
}

struct Scored {
  SummModel model;
  double score;
};

Scored score_candidate(const EventDataset& dataset, const TargetVariable& target,
                       const SearchConfig& config, std::vector<LabelId> influencers) {
  SummarySpec spec =
      make_spec(config.kind, std::move(influencers), config.look_back, dataset.alphabet());
  SummModel model =
      fit_model(dataset, target, spec, config.prior_alpha, config.penalty_gamma);
  const double s = model.score.score;
  return {std::move(model), s};
}

}  // namespace

SummModel fit_model(const EventDataset& dataset, const TargetVariable& target,
                    const SummarySpec& spec, double alpha, double gamma) {
  SummaryStats stats = count_statistics(dataset, target, spec);
  ParameterTable params = estimate_parameters(stats, alpha);
  ScoreReport score = bic_score(stats, params, gamma, dataset.total_events());
  return SummModel{dataset.alphabet(), target, spec, std::move(params), score};
}

SummModel influencer_search(const EventDataset& dataset, const TargetVariable& target,
                            const SearchConfig& config, std::vector<TraceEntry>* trace) {
  if (dataset.sequences().empty()) throw InputError("influencer search needs a non-empty dataset");
  if (config.kind == SummaryKind::kgram)
    throw InputError("kgram models have no influencing set to search; fit them directly");

  const std::vector<LabelId> pool = resolve_pool(dataset, target, config);

  std::vector<LabelId> parents;
  Scored best = score_candidate(dataset, target, config, parents);

  auto try_candidate = [&](const char* phase, LabelId candidate,
                           std::vector<LabelId> proposed) {
    std::optional<Scored> scored;
    try {
      scored = score_candidate(dataset, target, config, proposed);
    } catch (const SizingError& e) {
      throw SizingError(std::string(e.what()) + " (while scoring candidate '" +
                        dataset.alphabet().label(candidate) + "')");
    }
    const bool accepted = scored->score > best.score;
    if (trace)
      trace->push_back({phase, candidate, proposed, scored->score, accepted});
    if (accepted) {
      best = std::move(*scored);
      parents = std::move(proposed);
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<LabelId> before_forward = parents;

    // Forward sweep over a snapshot of the non-parent labels.
    std::vector<LabelId> forward_candidates;
    for (LabelId id : pool)
      if (!std::binary_search(before_forward.begin(), before_forward.end(), id))
        forward_candidates.push_back(id);
    for (LabelId candidate : forward_candidates) {
      std::vector<LabelId> proposed = parents;
      proposed.insert(std::lower_bound(proposed.begin(), proposed.end(), candidate), candidate);
      try_candidate("forward", candidate, std::move(proposed));
    }

    // Backward sweep over a snapshot of the current parents.
    const std::vector<LabelId> backward_candidates = parents;
    for (LabelId candidate : backward_candidates) {
      std::vector<LabelId> proposed;
      proposed.reserve(parents.size());
      for (LabelId id : parents)
        if (id != candidate) proposed.push_back(id);
      try_candidate("backward", candidate, std::move(proposed));
    }

    if (config.iterate_to_convergence && parents != before_forward) changed = true;
  }

  return std::move(best.model);
}

SummModel exhaustive_search(const EventDataset& dataset, const TargetVariable& target,
                            const SearchConfig& config, int max_pool_size) {
  if (dataset.sequences().empty()) throw InputError("exhaustive search needs a non-empty dataset");
  const std::vector<LabelId> pool = resolve_pool(dataset, target, config);
  if (pool.size() > static_cast<std::size_t>(max_pool_size))
    throw SizingError("candidate pool of " + std::to_string(pool.size()) +
                      " labels exceeds the exhaustive-search limit of " +
                      std::to_string(max_pool_size));

  std::optional<Scored> best;
  std::vector<LabelId> best_set;
  const std::uint64_t n_subsets = std::uint64_t(1) << pool.size();
  for (std::uint64_t code = 0; code < n_subsets; ++code) {
    std::vector<LabelId> subset;
    for (std::size_t j = 0; j < pool.size(); ++j)
      if ((code >> j) & 1) subset.push_back(pool[j]);
    Scored scored = score_candidate(dataset, target, config, subset);
    const bool better =
        !best || scored.score > best->score ||
        (scored.score == best->score &&
         (subset.size() < best_set.size() ||
          (subset.size() == best_set.size() && subset < best_set)));
    if (better) {
      best = std::move(scored);
      best_set = std::move(subset);
    }
  }
  return std::move(best->model);
}

double set_f1(const std::vector<LabelId>& estimated, const std::vector<LabelId>& truth) {
  if (estimated.empty() && truth.empty()) return 1.0;
  if (estimated.empty() || truth.empty()) return 0.0;
  std::vector<LabelId> a = estimated, b = truth;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<LabelId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  // 2·|A∩B| / (|A| + |B|) is the harmonic mean of precision and recall.
  return 2.0 * static_cast<double>(common.size()) /
         static_cast<double>(a.size() + b.size());
}

}  // namespace summ
