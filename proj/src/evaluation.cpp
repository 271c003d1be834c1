#include "summ/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <set>
#include <sstream>
#include <utility>

#include "summ/error.hpp"
#include "summ/parallel.hpp"
#include "summ/rng.hpp"

namespace summ {

namespace {

EventDataset concat(const EventDataset& a, const EventDataset& b) {
  if (!(a.alphabet() == b.alphabet()))
    throw InternalError("cannot concatenate datasets over different alphabets");
  std::vector<Sequence> seqs = a.sequences();
  seqs.insert(seqs.end(), b.sequences().begin(), b.sequences().end());
  return EventDataset(a.alphabet(), std::move(seqs));
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::int32_t> sorted_unique(std::vector<std::int32_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// CLI-facing model names for the two searchable summary kinds.
std::string model_name(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::binary: return "bsumm";
    case SummaryKind::ordinal: return "osumm";
    case SummaryKind::kgram: break;
  }
  throw ConfigError("kgram summaries are evaluated via the Markov chain baseline");
}

std::string join_labels(const Alphabet& alphabet, const std::vector<LabelId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += alphabet.label(ids[i]);
  }
  return out;
}

}  // namespace

void SplitSpec::validate() const {
  if (!(train > 0) || !(dev > 0) || !(test > 0))
    throw ConfigError("split fractions must all be positive");
  if (std::abs(train + dev + test - 1.0) > 1e-9)
    throw ConfigError("split fractions must sum to 1");
}

SplitResult split_dataset(const EventDataset& dataset, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = dataset.sequences().size();
  if (n < 3) throw ConfigError("need at least 3 sequences to form train/dev/test splits");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(derive_seed(spec.seed, "split"));
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[i], order[j]);
  }

  const auto n_train = static_cast<std::size_t>(std::floor(spec.train * static_cast<double>(n)));
  const auto n_dev = static_cast<std::size_t>(std::floor(spec.dev * static_cast<double>(n)));
  if (n_train == 0 || n_dev == 0 || n_train + n_dev >= n)
    throw ConfigError("split fractions leave an empty train, dev, or test split");

  auto slice = [&](std::size_t begin, std::size_t end) {
    std::vector<Sequence> seqs;
    seqs.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) seqs.push_back(dataset.sequences()[order[i]]);
    return EventDataset(dataset.alphabet(), std::move(seqs));
  };
  EventDataset train = slice(0, n_train);
  EventDataset dev = slice(n_train, n_train + n_dev);
  EventDataset test = slice(n_train + n_dev, n);

  // A label qualifies only if it occurs in every split; everything else is
  // deleted from all three so train, dev, and test share one alphabet.
  auto present = [](const EventDataset& d) {
    std::set<LabelId> seen;
    for (const Sequence& s : d.sequences())
      for (LabelId id : s.events) seen.insert(id);
    return seen;
  };
  const std::set<LabelId> in_train = present(train);
  const std::set<LabelId> in_dev = present(dev);
  const std::set<LabelId> in_test = present(test);
  std::vector<LabelId> keep;
  for (LabelId id = 0; id < static_cast<LabelId>(dataset.alphabet().size()); ++id)
    if (in_train.count(id) && in_dev.count(id) && in_test.count(id)) keep.push_back(id);
  if (keep.empty()) throw DataError("no label occurs in all of train, dev, and test");

  if (keep.size() < dataset.alphabet().size()) {
    train = restrict_to_labels(train, keep);
    dev = restrict_to_labels(dev, keep);
    test = restrict_to_labels(test, keep);
  }
  if (train.sequences().empty() || dev.sequences().empty() || test.sequences().empty())
    throw ConfigError("rare-label filtering emptied one of the splits");
  return SplitResult{std::move(train), std::move(dev), std::move(test)};
}

void HyperGrid::validate() const {
  if (alphas.empty() || look_backs.empty() || gammas.empty())
    throw ConfigError("hyperparameter grids must be non-empty");
  for (double a : alphas)
    if (!(a > 0)) throw ConfigError("grid alphas must be positive");
  for (std::int32_t k : look_backs)
    if (k < 1) throw ConfigError("grid look-backs must be at least 1");
  for (double g : gammas)
    if (!(g > 0)) throw ConfigError("grid gammas must be positive");
}

GridChoice grid_search(const EventDataset& train, const EventDataset& dev,
                       const TargetVariable& target, const HyperGrid& grid,
                       SummaryKind kind) {
  grid.validate();
  const std::vector<std::int32_t> kappas = sorted_unique(grid.look_backs);
  const std::vector<double> gammas = sorted_unique(grid.gammas);
  const std::vector<double> alphas = sorted_unique(grid.alphas);

  struct Point {
    std::int32_t kappa;
    double gamma;
    double alpha;
  };
  std::vector<Point> points;
  points.reserve(kappas.size() * gammas.size() * alphas.size());
  for (std::int32_t k : kappas)
    for (double g : gammas)
      for (double a : alphas) points.push_back(Point{k, g, a});

  std::vector<std::optional<GridChoice>> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point& p = points[i];
    SearchConfig config;
    config.kind = kind;
    config.look_back = p.kappa;
    config.prior_alpha = p.alpha;
    config.penalty_gamma = p.gamma;
    SummModel model = influencer_search(train, target, config);
    const double dev_ll = test_log_loss(model, dev);
    results[i] = GridChoice{p.alpha, p.kappa, p.gamma, dev_ll, std::move(model)};
  });

  // Points are laid out with κ outermost and α innermost, all ascending, so
  // keeping the first strict maximum realizes the tie-break order.
  std::optional<GridChoice> best;
  for (auto& r : results) {
    if (!best || r->dev_log_likelihood > best->dev_log_likelihood) best = std::move(r);
  }
  return std::move(*best);
}

double test_log_loss(const SummModel& model, const EventDataset& test) {
  if (!(test.alphabet() == model.alphabet))
    throw DataError("evaluation dataset labels do not match the model's alphabet");
  SummaryStats stats = count_statistics(test, model.target, model.spec);
  return log_likelihood(stats, model.params);
}

LabelEval markov_chain_baseline(const EventDataset& train, const EventDataset& dev,
                                const EventDataset& test, const TargetVariable& target,
                                std::int32_t order, const std::vector<double>& alpha_grid) {
  if (order < 0) throw ConfigError("Markov chain order must be non-negative");
  if (alpha_grid.empty()) throw ConfigError("alpha grid must be non-empty");
  for (double a : alpha_grid)
    if (!(a > 0)) throw ConfigError("grid alphas must be positive");

  const SummarySpec spec = SummarySpec::kgram(train.alphabet(), order);
  const SummaryStats train_stats = count_statistics(train, target, spec);
  const SummaryStats dev_stats = count_statistics(dev, target, spec);

  double best_alpha = 0;
  double best_dev = 0;
  bool have_best = false;
  for (double a : sorted_unique(alpha_grid)) {
    const ParameterTable params = estimate_parameters(train_stats, a);
    const double dev_ll = log_likelihood(dev_stats, params);
    if (!have_best || dev_ll > best_dev) {
      have_best = true;
      best_alpha = a;
      best_dev = dev_ll;
    }
  }

  const EventDataset fit_set = concat(train, dev);
  SummModel model = fit_model(fit_set, target, spec, best_alpha, 1.0);
  const double test_ll = test_log_loss(model, test);

  LabelEval eval;
  eval.label = join_labels(train.alphabet(), target.target_labels());
  eval.model = "mc-" + std::to_string(order);
  eval.alpha = best_alpha;
  eval.dev_log_likelihood = best_dev;
  eval.test_log_likelihood = test_ll;
  return eval;
}

EvalReport evaluate_dataset(const EventDataset& dataset, const EvalConfig& config) {
  config.grid.validate();
  SplitResult splits = split_dataset(dataset, config.split);
  const Alphabet& retained = splits.train.alphabet();

  std::vector<LabelId> targets;
  if (config.labels_of_interest.empty()) {
    for (LabelId id = 0; id < static_cast<LabelId>(retained.size()); ++id) targets.push_back(id);
  } else {
    for (const std::string& name : config.labels_of_interest) {
      auto id = retained.find(name);
      if (!id)
        throw DataError("label of interest '" + name +
                        "' is not in the retained alphabet after rare-label filtering");
      targets.push_back(*id);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }

  EvalReport report;
  report.model = config.markov_baseline ? "mc-" + std::to_string(config.order)
                                        : model_name(config.kind);
  report.retained_labels = retained.labels();
  for (LabelId id : targets) report.labels_of_interest.push_back(retained.label(id));

  const EventDataset fit_set = concat(splits.train, splits.dev);
  report.per_label.resize(targets.size());
  parallel_for(targets.size(), [&](std::size_t i) {
    const TargetVariable target(retained, {targets[i]});
    if (config.markov_baseline) {
      report.per_label[i] = markov_chain_baseline(splits.train, splits.dev, splits.test,
                                                  target, config.order, config.grid.alphas);
      return;
    }
    GridChoice choice = grid_search(splits.train, splits.dev, target, config.grid, config.kind);
    SearchConfig refit;
    refit.kind = config.kind;
    refit.look_back = choice.look_back;
    refit.prior_alpha = choice.alpha;
    refit.penalty_gamma = choice.gamma;
    SummModel model = influencer_search(fit_set, target, refit);
    LabelEval eval;
    eval.label = retained.label(targets[i]);
    eval.model = model_name(config.kind);
    eval.alpha = choice.alpha;
    eval.look_back = choice.look_back;
    eval.gamma = choice.gamma;
    for (LabelId inf : model.influencers()) eval.influencers.push_back(retained.label(inf));
    eval.dev_log_likelihood = choice.dev_log_likelihood;
    eval.test_log_likelihood = test_log_loss(model, splits.test);
    report.per_label[i] = std::move(eval);
  });

  double total = 0;
  for (const LabelEval& e : report.per_label) total += e.test_log_likelihood;
  report.macro_avg_test_log_likelihood =
      report.per_label.empty() ? 0 : total / static_cast<double>(report.per_label.size());
  return report;
}

std::string format_eval_table(const EvalReport& report) {
  auto fmt_double = [](double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
  };
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"label", "model", "alpha", "kappa", "gamma", "influencers", "test_ll"});
  for (const LabelEval& e : report.per_label) {
    std::string infs;
    for (std::size_t i = 0; i < e.influencers.size(); ++i) {
      if (i) infs += ",";
      infs += e.influencers[i];
    }
    rows.push_back({e.label, e.model, fmt_double(e.alpha),
                    e.look_back ? std::to_string(*e.look_back) : "-",
                    e.gamma ? fmt_double(*e.gamma) : "-",
                    infs.empty() ? "-" : infs,
                    fmt_double(e.test_log_likelihood)});
  }
  rows.push_back({"macro_avg", "", "", "", "", "", fmt_double(report.macro_avg_test_log_likelihood)});

  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace summ
