// Acceptance suite: runs every stated criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exits non-zero if any fail.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "summ/dataset_io.hpp"
#include "summ/evaluation.hpp"
#include "summ/graphing.hpp"
#include "summ/rng.hpp"
#include "summ/synthgen.hpp"

using namespace summ;
namespace fs = std::filesystem;

namespace {

struct Detail {
  std::vector<std::string> lines;
  bool ok = true;

  void check(bool pass, const std::string& line) {
    ok = ok && pass;
    lines.push_back(std::string(pass ? "ok   " : "FAIL ") + line);
  }
  void note(const std::string& line) { lines.push_back("     " + line); }
};

std::string fmt(double v, int precision = 3) {
  std::ostringstream out;
  out.precision(precision);
  out << std::fixed << v;
  return out.str();
}

EventDataset iid_dataset(std::size_t n_labels, std::int64_t n_events, std::uint64_t seed) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n_labels; ++i) labels.push_back("L" + std::to_string(i));
  Alphabet a(labels);
  SplitMix64 rng(seed);
  std::vector<Sequence> seqs;
  const std::int64_t len = 20;
  for (std::int64_t done = 0; done < n_events; done += len) {
    Sequence s{"s" + std::to_string(done / len), {}};
    const std::int64_t take = std::min(len, n_events - done);
    for (std::int64_t j = 0; j < take; ++j)
      s.events.push_back(static_cast<LabelId>(rng.next_below(n_labels)));
    seqs.push_back(std::move(s));
  }
  return EventDataset(a, std::move(seqs));
}

EventDataset b1_dataset(std::int64_t k, std::uint64_t seed) {
  GenerativeSpec spec = builtin_spec("b1");
  spec.sequence_count = k;
  spec.seed = seed;
  return generate(spec);
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// 1. Recovery-curve reproduction at the pinned configuration.

Detail criterion_recovery_curve() {
  Detail d;
  const std::vector<std::int64_t> ks{10, 50, 100, 500, 1000};
  const std::vector<double> reference{0.23, 0.59, 0.69, 0.93, 1.00};

  SearchConfig config;
  config.kind = SummaryKind::binary;
  config.look_back = 3;
  config.prior_alpha = 0.1;
  config.penalty_gamma = 1.0;

  GenerativeSpec spec = builtin_spec("b1");
  const auto start = std::chrono::steady_clock::now();
  const auto points = recovery_experiment(spec, ks, 10, config, "A", 0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double tol = ks[i] <= 100 ? 0.10 : 0.05;
    const double diff = std::abs(points[i].mean_f1 - reference[i]);
    d.check(diff <= tol, "K=" + std::to_string(ks[i]) + ": mean F1 " + fmt(points[i].mean_f1) +
                             " vs reference " + fmt(reference[i]) + " (tolerance " + fmt(tol, 2) +
                             ", stderr " + fmt(points[i].std_error) + ")");
  }
  d.check(points.back().mean_f1 >= points.front().mean_f1,
          "curve non-decreasing endpoint-to-endpoint (" + fmt(points.front().mean_f1) + " -> " +
              fmt(points.back().mean_f1) + ")");
  d.check(seconds < 120.0, "runtime " + fmt(seconds, 1) + "s < 120s");
  return d;
}

// ---------------------------------------------------------------------------
// 2. Generator fidelity against the built-in table at K=1000.

Detail criterion_generator_fidelity() {
  Detail d;
  GenerativeSpec spec = builtin_spec("b1");
  EventDataset data = b1_dataset(1000, 0);
  const Alphabet& a = data.alphabet();

  SummarySpec window = SummarySpec::binary({a.id_of("B"), a.id_of("C")}, 3);
  for (const char* label : {"A", "B"}) {
    TargetVariable x(a, {a.id_of(label)});
    SummaryStats stats = count_statistics(data, x, window);
    for (int bits = 0; bits < 4; ++bits) {
      SummaryState s{SummaryKind::binary, {bits & 1, (bits >> 1) & 1}};
      const double expect = spec.table[static_cast<std::size_t>(bits)]
                                      [static_cast<std::size_t>(a.id_of(label))];
      const std::int64_t n_s = stats.state_total(s);
      const double phat =
          static_cast<double>(stats.counts().at(s)[0]) / static_cast<double>(n_s);
      const double se = std::sqrt(expect * (1 - expect) / static_cast<double>(n_s));
      d.check(std::abs(phat - expect) <= 3 * se,
              std::string("P(") + label + " | state " + std::to_string(bits) + ") = " +
                  fmt(phat) + " vs " + fmt(expect) + " (3se = " + fmt(3 * se) + ", n = " +
                  std::to_string(n_s) + ")");
    }
  }

  const double n = static_cast<double>(data.total_events());
  for (const auto& [label, expect] :
       std::vector<std::pair<std::string, double>>{{"C", 0.3}, {"D", 0.2}, {"E", 0.1}}) {
    std::int64_t hits = 0;
    for (const auto& s : data.sequences())
      for (LabelId l : s.events) hits += l == a.id_of(label);
    const double phat = static_cast<double>(hits) / n;
    const double se = std::sqrt(expect * (1 - expect) / n);
    d.check(std::abs(phat - expect) <= 3 * se,
            "marginal " + label + " = " + fmt(phat) + " vs " + fmt(expect) +
                " (3se = " + fmt(3 * se) + ")");
  }
  return d;
}

// ---------------------------------------------------------------------------
// 3. Aggregated likelihood equals the naive per-position sum.

Detail criterion_likelihood_oracle() {
  Detail d;
  SplitMix64 rng(derive_seed(0, "acceptance-ll"));
  int failures = 0;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.next_below(3);  // M <= 4
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back(std::string(1, 'A' + (char)i));
    Alphabet a(labels);

    std::vector<Sequence> seqs;
    std::int64_t budget = 50;  // N <= 50
    const int n_seqs = 1 + static_cast<int>(rng.next_below(4));
    for (int i = 0; i < n_seqs && budget > 0; ++i) {
      Sequence s{"s" + std::to_string(i), {}};
      const std::int64_t len =
          std::min<std::int64_t>(budget, 1 + static_cast<std::int64_t>(rng.next_below(12)));
      for (std::int64_t j = 0; j < len; ++j)
        s.events.push_back(static_cast<LabelId>(rng.next_below(m)));
      budget -= len;
      seqs.push_back(std::move(s));
    }
    EventDataset data(a, std::move(seqs));
    TargetVariable x(a, {static_cast<LabelId>(rng.next_below(m))});

    SummarySpec spec;
    std::vector<LabelId> u;
    for (LabelId l = 0; l < static_cast<LabelId>(m); ++l)
      if (rng.next_below(2)) u.push_back(l);
    const LookBack lb = rng.next_below(2)
                            ? LookBack(1 + static_cast<std::int32_t>(rng.next_below(5)))
                            : std::nullopt;
    switch (trial % 3) {
      case 0: spec = SummarySpec::binary(u, lb); break;
      case 1: spec = SummarySpec::ordinal(u, lb); break;
      default: spec = SummarySpec::kgram(a, static_cast<std::int32_t>(rng.next_below(4))); break;
    }

    SummaryStats stats = count_statistics(data, x, spec);
    ParameterTable params = estimate_parameters(stats, 0.25 + rng.next_unit());
    double naive = 0;
    for (const auto& s : data.sequences())
      for (std::int64_t pos = 1; pos <= s.length(); ++pos)
        naive += std::log(params.prob(x.state_of(s.at(pos)), summarize(spec, s, pos)));
    const double diff = std::abs(log_likelihood(stats, params) - naive);
    worst = std::max(worst, diff);
    if (diff > 1e-9) ++failures;
  }
  d.check(failures == 0, "100 random datasets, all summary kinds: worst |diff| = " +
                             fmt(worst, 15) + " (limit 1e-9, " + std::to_string(failures) +
                             " over)");
  return d;
}

// ---------------------------------------------------------------------------
// 4. Domain-size formulas against full enumeration.

Detail criterion_domain_sizes() {
  Detail d;
  d.check(domain_size(SummarySpec::binary({0, 1, 2}, 1)) == 8, "binary |U|=3 domain = 8");
  d.check(domain_size(SummarySpec::ordinal({0, 1, 2}, 1)) == 16, "ordinal |U|=3 domain = 16");

  bool all_match = true;
  for (std::size_t n = 0; n <= 5; ++n) {
    std::vector<LabelId> u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(static_cast<LabelId>(i));
    for (auto kind : {SummaryKind::binary, SummaryKind::ordinal}) {
      SummarySpec spec = kind == SummaryKind::binary ? SummarySpec::binary(u, 2)
                                                     : SummarySpec::ordinal(u, 2);
      all_match = all_match && enumerate_domain(spec).size() == domain_size(spec);
    }
    if (n >= 1) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back("L" + std::to_string(i));
      SummarySpec spec = SummarySpec::kgram(Alphabet(labels), 2);
      all_match = all_match && enumerate_domain(spec).size() == domain_size(spec);
    }
  }
  d.check(all_match, "enumerate_domain cardinality matches domain_size for all |U| <= 5");
  return d;
}

// ---------------------------------------------------------------------------
// 5. Greedy search against the exhaustive optimum.

Detail criterion_greedy_vs_exhaustive() {
  Detail d;
  SearchConfig config;
  config.kind = SummaryKind::binary;
  config.look_back = 3;
  config.prior_alpha = 0.1;
  config.penalty_gamma = 1.0;

  int identical = 0;
  bool diffs_close = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EventDataset data = b1_dataset(1000, derive_seed(0, "acceptance-greedy", seed));
    TargetVariable x(data.alphabet(), {data.alphabet().id_of("A")});
    SummModel greedy = influencer_search(data, x, config);
    SummModel exhaustive = exhaustive_search(data, x, config);
    if (greedy.influencers() == exhaustive.influencers()) {
      ++identical;
    } else {
      const double gap = std::abs(greedy.score.score - exhaustive.score.score);
      const bool close = gap <= 0.01 * std::abs(exhaustive.score.score);
      diffs_close = diffs_close && close;
      d.note("seed " + std::to_string(seed) + ": sets differ, score gap " + fmt(gap));
    }
  }
  d.check(identical >= 9, std::to_string(identical) + "/10 runs returned identical sets");
  d.check(diffs_close, "every differing run within 1% of the exhaustive optimum");
  return d;
}

// ---------------------------------------------------------------------------
// 6. Normalization, smoothing bounds, and unseen-state behaviour.

Detail criterion_normalization() {
  Detail d;

  std::vector<std::pair<std::string, SummModel>> models;
  EventDataset data = b1_dataset(100, 3);
  for (auto kind : {SummaryKind::binary, SummaryKind::ordinal}) {
    for (const auto& label : data.alphabet().labels()) {
      SearchConfig config;
      config.kind = kind;
      config.look_back = 3;
      config.prior_alpha = 0.1;
      config.penalty_gamma = 1.0;
      TargetVariable x(data.alphabet(), {data.alphabet().id_of(label)});
      models.emplace_back(to_string(kind) + "/" + label, influencer_search(data, x, config));
    }
  }
  TargetVariable xa(data.alphabet(), {data.alphabet().id_of("A")});
  for (std::int32_t k : {0, 1, 2})
    models.emplace_back("kgram-" + std::to_string(k),
                        fit_model(data, xa, SummarySpec::kgram(data.alphabet(), k), 1.0, 1.0));

  bool sums_ok = true, range_ok = true;
  double worst_sum = 0;
  for (const auto& [name, model] : models) {
    for (const auto& state : enumerate_domain(model.spec)) {
      double sum = 0;
      for (int s = 0; s < model.target.n_states(); ++s) {
        const double p = model.params.prob(s, state);
        range_ok = range_ok && p > 0.0 && p < 1.0;
        sum += p;
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  sums_ok = worst_sum <= 1e-12;
  d.check(sums_ok, "sum_x theta(x|s) = 1 within 1e-12 over every state of " +
                       std::to_string(models.size()) + " models (worst " + fmt(worst_sum, 15) +
                       ")");
  d.check(range_ok, "every estimate strictly inside (0,1)");

  // A test sequence exercising a summary state the training data never
  // produced: B and C inside one 3-window only in the test set.
  Alphabet a({"A", "B", "C"});
  std::vector<Sequence> train_seqs;
  for (int i = 0; i < 6; ++i) {
    Sequence s{"t" + std::to_string(i), {}};
    for (int rep = 0; rep < 2; ++rep)
      for (LabelId l : {1, 0, 0, 0, 0, 2, 0, 0, 0, 0}) s.events.push_back(l);
    train_seqs.push_back(std::move(s));
  }
  EventDataset train(a, std::move(train_seqs));
  TargetVariable x(a, {0});
  SummarySpec spec = SummarySpec::binary({1, 2}, 3);
  SummaryStats stats = count_statistics(train, x, spec);
  const SummaryState both{SummaryKind::binary, {1, 1}};
  d.check(stats.counts().find(both) == stats.counts().end(),
          "training data never hits the joint presence state");

  SummModel model = fit_model(train, x, spec, 0.5, 1.0);
  EventDataset test(a, {Sequence{"u1", {1, 2, 0, 0}}});  // B then C: joint state at position 3
  const double ll = test_log_loss(model, test);
  d.check(std::isfinite(ll), "test LL finite on an unseen summary state (" + fmt(ll) + ")");
  return d;
}

// ---------------------------------------------------------------------------
// 7. First-order k-gram pipeline equals an independent bigram model.

Detail criterion_bigram_equivalence() {
  Detail d;
  SplitMix64 rng(derive_seed(0, "acceptance-bigram"));
  double worst = 0;
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + rng.next_below(2);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back(std::string(1, 'A' + (char)i));
    Alphabet a(labels);
    std::vector<Sequence> seqs;
    const int n_seqs = 2 + static_cast<int>(rng.next_below(4));
    for (int i = 0; i < n_seqs; ++i) {
      Sequence s{"s" + std::to_string(i), {}};
      const std::int64_t len = 3 + static_cast<std::int64_t>(rng.next_below(10));
      for (std::int64_t j = 0; j < len; ++j)
        s.events.push_back(static_cast<LabelId>(rng.next_below(m)));
      seqs.push_back(std::move(s));
    }
    EventDataset data(a, std::move(seqs));
    const LabelId target_id = static_cast<LabelId>(rng.next_below(m));
    TargetVariable x(a, {target_id});
    const double alpha = 0.25 + rng.next_unit();

    SummarySpec spec = SummarySpec::kgram(a, 1);
    SummaryStats stats = count_statistics(data, x, spec);
    const double pipeline = log_likelihood(stats, estimate_parameters(stats, alpha));

    // Independent bigram: one slot per previous label plus one for the
    // sequence start, smoothed the same way.
    std::vector<std::int64_t> hits(m + 1, 0), totals(m + 1, 0);
    for (const auto& s : data.sequences()) {
      for (std::int64_t pos = 1; pos <= s.length(); ++pos) {
        const std::size_t prev = pos == 1 ? 0 : 1 + static_cast<std::size_t>(s.at(pos - 1));
        hits[prev] += s.at(pos) == target_id;
        totals[prev] += 1;
      }
    }
    double bigram = 0;
    for (const auto& s : data.sequences()) {
      for (std::int64_t pos = 1; pos <= s.length(); ++pos) {
        const std::size_t prev = pos == 1 ? 0 : 1 + static_cast<std::size_t>(s.at(pos - 1));
        const double theta = (alpha + static_cast<double>(hits[prev])) /
                             (2 * alpha + static_cast<double>(totals[prev]));
        bigram += std::log(s.at(pos) == target_id ? theta : 1 - theta);
      }
    }
    const double diff = std::abs(pipeline - bigram);
    worst = std::max(worst, diff);
    if (diff > 1e-9) ++failures;
  }
  d.check(failures == 0, "20 random toys: worst |pipeline - bigram| = " + fmt(worst, 15) +
                             " (limit 1e-9)");
  return d;
}

// ---------------------------------------------------------------------------
// 8. Search cost scaling in alphabet size and event count.

Detail criterion_scaling() {
  Detail d;

  auto time_search = [](const EventDataset& data) {
    SearchConfig config;
    config.kind = SummaryKind::binary;
    config.look_back = 2;
    config.prior_alpha = 1.0;
    config.penalty_gamma = 1.0;
    TargetVariable x(data.alphabet(), {0});
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      influencer_search(data, x, config);
      best = std::min(
          best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
  };

  std::vector<double> log_m, log_tm;
  std::string m_times;
  for (std::size_t m : {5, 10, 20, 40}) {
    EventDataset data = iid_dataset(m, 50000, derive_seed(0, "acceptance-scale-m", m));
    const double t = time_search(data);
    log_m.push_back(std::log(static_cast<double>(m)));
    log_tm.push_back(std::log(t));
    m_times += " M=" + std::to_string(m) + ":" + fmt(t * 1e3, 1) + "ms";
  }
  const double slope_m = least_squares_slope(log_m, log_tm);
  d.check(slope_m <= 2.3, "alphabet-size exponent " + fmt(slope_m, 2) + " <= 2.3 (" + m_times + ")");

  std::vector<double> log_n, log_tn;
  std::string n_times;
  for (std::int64_t n : {std::int64_t(10000), std::int64_t(31623), std::int64_t(100000)}) {
    EventDataset data = iid_dataset(5, n, derive_seed(0, "acceptance-scale-n",
                                                      static_cast<std::uint64_t>(n)));
    const double t = time_search(data);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_tn.push_back(std::log(t));
    n_times += " N=" + std::to_string(n) + ":" + fmt(t * 1e3, 1) + "ms";
  }
  const double slope_n = least_squares_slope(log_n, log_tn);
  d.check(slope_n <= 1.2, "event-count exponent " + fmt(slope_n, 2) + " <= 1.2 (" + n_times + ")");
  return d;
}

// ---------------------------------------------------------------------------
// 9. Byte-identical CLI outputs across repeated seeded runs.

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing: " + path.string() + ">";
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Detail criterion_cli_determinism(const std::string& cli) {
  Detail d;
  if (cli.empty()) {
    d.check(false, "no CLI path supplied (pass --cli <path-to-summ>)");
    return d;
  }

  const fs::path root = fs::temp_directory_path() / ("summ-acceptance-" + std::to_string(getpid()));
  fs::remove_all(root);
  fs::create_directories(root);

  const std::string data = (root / "run1" / "gen" / "dataset.jsonl").string();
  const auto commands = [&](const fs::path& out) {
    const std::string o = out.string();
    return std::vector<std::pair<std::string, std::vector<std::string>>>{
        {"generate --builtin b1 --k 60 --seed 5 --out " + o + "/gen",
         {"gen/dataset.jsonl", "gen/generative_spec.json"}},
        {"learn --data " + data + " --model bsumm --target A --kappa 3 --alpha 0.1 --gamma 1"
         " --trace --out " + o + "/learn",
         {"learn/model.json"}},
        {"eval --data " + data + " --model bsumm --grid \"alphas=0.1,1;kappas=3;gammas=1\""
         " --seed 3 --out " + o + "/eval",
         {"eval/eval.json", "eval/eval_table.txt"}},
        {"recover --builtin b1 --k-grid 10,20 --runs 2 --seed 1 --out " + o + "/recover",
         {"recover/recovery.json"}},
        {"graph --data " + data + " --kappa 3 --alpha 0.1 --gamma 1 --out " + o + "/graph",
         {"graph/graph.json", "graph/graph.dot"}},
    };
  };

  bool all_ok = true;
  for (int run = 1; run <= 2; ++run) {
    const fs::path out = root / ("run" + std::to_string(run));
    for (const auto& [args, artifacts] : commands(out)) {
      const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        d.check(false, "command exited " + std::to_string(rc) + ": " + args.substr(0, 60));
        all_ok = false;
      }
    }
  }
  if (all_ok) d.note("all 10 invocations exited 0");

  for (const auto& [args, artifacts] : commands(root / "runX")) {
    (void)args;
    for (const auto& rel : artifacts) {
      const std::string a = read_file(root / "run1" / rel);
      const std::string b = read_file(root / "run2" / rel);
      d.check(!a.empty() && a == b,
              rel + ": " + (a == b ? "byte-identical" : "outputs differ") + " (" +
                  std::to_string(a.size()) + " bytes)");
    }
  }
  fs::remove_all(root);
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i < argc - 1; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  if (cli.empty())
    if (const char* env = std::getenv("SUMM_CLI")) cli = env;

  struct Criterion {
    std::string name;
    std::function<Detail()> run;
  };
  const std::vector<Criterion> criteria{
      {"recovery-curve reproduction (b1, 10 runs)", [] { return criterion_recovery_curve(); }},
      {"generator fidelity at K=1000", [] { return criterion_generator_fidelity(); }},
      {"likelihood oracle on 100 random datasets", [] { return criterion_likelihood_oracle(); }},
      {"domain-size formulas vs enumeration", [] { return criterion_domain_sizes(); }},
      {"greedy vs exhaustive search on b1", [] { return criterion_greedy_vs_exhaustive(); }},
      {"normalization, smoothing, unseen states", [] { return criterion_normalization(); }},
      {"first-order k-gram equals a bigram model", [] { return criterion_bigram_equivalence(); }},
      {"search cost scaling in M and N", [] { return criterion_scaling(); }},
      {"CLI determinism across seeded runs", [&] { return criterion_cli_determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Detail detail;
    try {
      detail = criteria[i].run();
    } catch (const std::exception& e) {
      detail.ok = false;
      detail.lines.push_back(std::string("FAIL threw: ") + e.what());
    }
    failed += detail.ok ? 0 : 1;
    std::printf("[%s] criterion %zu: %s\n", detail.ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str());
    for (const auto& line : detail.lines) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  }

  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
