#include "summ/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "summ/rng.hpp"

namespace summ {

void GenerativeSpec::validate() const {
  if (alphabet.size() == 0) throw InputError("generative spec needs a non-empty alphabet");
  if (conditions.size() >= 63) throw SizingError("too many generator conditions to enumerate");
  for (const auto& c : conditions) {
    if (!alphabet.contains(c.label)) throw InputError("condition label not in alphabet");
    if (c.look_back < 1) throw InputError("condition look-backs must be >= 1");
  }
  const std::size_t rows = std::size_t(1) << conditions.size();
  if (table.size() != rows)
    throw InputError("conditional table needs " + std::to_string(rows) + " rows, got " +
                     std::to_string(table.size()));
  for (const auto& row : table) {
    if (row.size() != alphabet.size())
      throw InputError("conditional table rows must cover the whole alphabet");
    double sum = 0;
    for (double p : row) {
      if (p < 0 || p > 1) throw InputError("conditional probabilities must lie in [0,1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InputError("conditional table row sums to " + std::to_string(sum) + ", expected 1");
  }
  for (const auto& [label, parents] : influencing_sets) {
    alphabet.id_of(label);
    for (const auto& p : parents) alphabet.id_of(p);
  }
  if (sequence_length < 1) throw ConfigError("sequence length must be >= 1");
  if (sequence_count < 1) throw ConfigError("sequence count must be >= 1");
}

EventDataset generate(const GenerativeSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  const std::size_t n_cond = spec.conditions.size();

  std::vector<Sequence> sequences;
  sequences.reserve(static_cast<std::size_t>(spec.sequence_count));
  std::vector<std::int64_t> last_seen(n_cond);

  for (std::int64_t k = 1; k <= spec.sequence_count; ++k) {
    Sequence seq{"s" + std::to_string(k), {}};
    seq.events.reserve(static_cast<std::size_t>(spec.sequence_length));
    std::fill(last_seen.begin(), last_seen.end(), 0);

    for (std::int64_t pos = 1; pos <= spec.sequence_length; ++pos) {
      std::size_t row = 0;
      for (std::size_t c = 0; c < n_cond; ++c) {
        const std::int64_t start =
            std::max<std::int64_t>(1, pos - spec.conditions[c].look_back);
        if (last_seen[c] >= start) row |= std::size_t(1) << c;
      }
      const LabelId label = static_cast<LabelId>(draw_categorical(rng, spec.table[row]));
      seq.events.push_back(label);
      for (std::size_t c = 0; c < n_cond; ++c)
        if (spec.conditions[c].label == label) last_seen[c] = pos;
    }
    sequences.push_back(std::move(seq));
  }
  return EventDataset(spec.alphabet, std::move(sequences));
}

GenerativeSpec builtin_spec(std::string_view name) {
  if (name != "b1") throw InputError("unknown builtin generative spec: " + std::string(name));

  GenerativeSpec spec;
  spec.alphabet = Alphabet({"A", "B", "C", "D", "E"});
  const LabelId b = 1, c = 2;
  spec.conditions = {{b, 3}, {c, 3}};
  // Rows indexed by (bit0 = B present, bit1 = C present); columns A..E.
  // A and B react to the window configuration, C/D/E are positionless.
  spec.table = {
      /* b̄,c̄ */ {0.30, 0.10, 0.3, 0.2, 0.1},
      /* b,c̄ */ {0.35, 0.05, 0.3, 0.2, 0.1},
      /* b̄,c */ {0.10, 0.30, 0.3, 0.2, 0.1},
      /* b,c */ {0.20, 0.20, 0.3, 0.2, 0.1},
  };
  spec.influencing_sets = {{"A", {"B", "C"}}, {"B", {"B", "C"}}};
  spec.sequence_length = 10;
  spec.sequence_count = 1;
  spec.seed = 0;
  spec.validate();
  return spec;
}

std::vector<RecoveryPoint> recovery_experiment(const GenerativeSpec& base,
                                               const std::vector<std::int64_t>& k_values,
                                               int runs, const SearchConfig& config,
                                               const std::string& target_label,
                                               std::uint64_t seed) {
  if (runs < 1) throw ConfigError("recovery experiment needs at least one run");
  auto truth_it = base.influencing_sets.find(target_label);
  if (truth_it == base.influencing_sets.end())
    throw InputError("no ground-truth influencing set recorded for label " + target_label);
  std::vector<LabelId> truth;
  for (const auto& l : truth_it->second) truth.push_back(base.alphabet.id_of(l));

  const TargetVariable target(base.alphabet, {base.alphabet.id_of(target_label)});

  std::vector<RecoveryPoint> points;
  points.reserve(k_values.size());
  for (std::int64_t k : k_values) {
    RecoveryPoint point;
    point.sequences = k;
    point.runs.resize(static_cast<std::size_t>(runs));
    // Independent stream per K; adding a K value never perturbs the others.
    const std::uint64_t k_stream =
        derive_seed(seed, "recover", static_cast<std::uint64_t>(k));
    for (int r = 0; r < runs; ++r) {
      GenerativeSpec run_spec = base;
      run_spec.sequence_count = k;
      run_spec.seed = k_stream + static_cast<std::uint64_t>(r);
      const EventDataset data = generate(run_spec);
      const SummModel model = influencer_search(data, target, config);
      point.runs[static_cast<std::size_t>(r)] = set_f1(model.influencers(), truth);
    }
    double mean = 0;
    for (double f : point.runs) mean += f;
    mean /= runs;
    double var = 0;
    for (double f : point.runs) var += (f - mean) * (f - mean);
    point.mean_f1 = mean;
    point.std_error = runs > 1 ? std::sqrt(var / (runs - 1)) / std::sqrt(runs) : 0.0;
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace summ
