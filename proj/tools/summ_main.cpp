#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "summ/dataset_io.hpp"
#include "summ/error.hpp"
#include "summ/evaluation.hpp"
#include "summ/graphing.hpp"
#include "summ/report.hpp"
#include "summ/search.hpp"
#include "summ/synthgen.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string part = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!part.empty()) parts.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& part : split_commas(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw summ::ConfigError(std::string(what) + ": '" + part + "' is not a number");
    }
  }
  if (out.empty()) throw summ::ConfigError(std::string(what) + ": empty list");
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  for (const std::string& part : split_commas(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw summ::ConfigError(std::string(what) + ": '" + part + "' is not an integer");
    }
  }
  if (out.empty()) throw summ::ConfigError(std::string(what) + ": empty list");
  return out;
}

// "alphas=0.1,1;kappas=1,5,10;gammas=0.5" (missing sections keep defaults).
summ::HyperGrid parse_grid(const std::string& text) {
  summ::HyperGrid grid;
  if (text.empty()) return grid;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const std::string section =
        text.substr(start, semi == std::string::npos ? semi : semi - start);
    if (!section.empty()) {
      const auto eq = section.find('=');
      if (eq == std::string::npos)
        throw summ::ConfigError("grid section '" + section + "' is not key=values");
      const std::string key = section.substr(0, eq);
      const std::string values = section.substr(eq + 1);
      if (key == "alphas") {
        grid.alphas = parse_doubles(values, "grid alphas");
      } else if (key == "kappas") {
        grid.look_backs.clear();
        for (std::int64_t k : parse_ints(values, "grid kappas"))
          grid.look_backs.push_back(static_cast<std::int32_t>(k));
      } else if (key == "gammas") {
        grid.gammas = parse_doubles(values, "grid gammas");
      } else {
        throw summ::ConfigError("unknown grid section '" + key + "' (alphas, kappas, gammas)");
      }
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return grid;
}

std::optional<std::vector<std::string>> load_alphabet_file(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw summ::InputError("cannot open alphabet file '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.push_back(line);
  }
  if (labels.empty()) throw summ::DataError("alphabet file '" + path + "' lists no labels");
  return labels;
}

summ::LookBack kappa_value(std::int32_t kappa) {
  if (kappa < 0) throw summ::ConfigError("--kappa must be >= 0 (0 means unbounded)");
  if (kappa == 0) return std::nullopt;
  return kappa;
}

// Shared dataset-input flags.
struct DataArgs {
  std::string path;
  std::string format = "auto";
  std::string alphabet_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", path, "Dataset file (csv or jsonl)")->required();
    cmd->add_option("--format", format, "Dataset format: csv, jsonl, auto")
        ->check(CLI::IsMember({"csv", "jsonl", "json", "auto"}));
    cmd->add_option("--alphabet", alphabet_file,
                    "File fixing the alphabet and its order, one label per line");
  }

  summ::EventDataset load() const {
    return summ::load_dataset(path, summ::dataset_format_from_string(format),
                              load_alphabet_file(alphabet_file));
  }
};

void write_artifact(const std::string& out_dir, const char* name, const std::string& content) {
  const std::filesystem::path path = std::filesystem::path(out_dir) / name;
  summ::write_file_atomic(path, content);
  std::cout << "wrote " << path.string() << "\n";
}

// With --out, artifacts land in the directory; without it the primary JSON
// document goes to stdout.
void emit_json(const std::string& out_dir, const char* name, const json& doc) {
  if (out_dir.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_artifact(out_dir, name, doc.dump(2) + "\n");
  }
}

int exit_code_for(const summ::Error& e) {
  const std::string kind = e.kind();
  return kind == "input" || kind == "config" ? 2 : 1;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

void setup_learn(CLI::App& app) {
  auto cmd = app.add_subcommand("learn", "Learn one model for a target label set");
  auto data = std::make_shared<DataArgs>();
  data->attach(cmd);
  auto model = std::make_shared<std::string>("bsumm");
  auto target = std::make_shared<std::string>();
  auto order = std::make_shared<std::int32_t>(1);
  auto kappa = std::make_shared<std::int32_t>(1);
  auto alpha = std::make_shared<double>(1.0);
  auto gamma = std::make_shared<double>(1.0);
  auto pool = std::make_shared<std::string>();
  auto allow_self = std::make_shared<bool>(true);
  auto iterate = std::make_shared<bool>(false);
  auto trace = std::make_shared<bool>(false);
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--model", *model, "bsumm, osumm, or mc")
      ->check(CLI::IsMember({"bsumm", "osumm", "mc"}));
  cmd->add_option("--target", *target, "Target labels, comma separated")->required();
  cmd->add_option("--order", *order, "Markov chain order (mc only)");
  cmd->add_option("--kappa", *kappa, "Look-back window (0 = unbounded)");
  cmd->add_option("--alpha", *alpha, "Dirichlet prior strength");
  cmd->add_option("--gamma", *gamma, "Score penalty weight");
  cmd->add_option("--pool", *pool, "Candidate influencer labels (default: all)");
  cmd->add_flag("--allow-self-loop,!--no-self-loop", *allow_self,
                "Allow target labels as their own influencers (default on)");
  cmd->add_flag("--iterate", *iterate, "Repeat forward/backward sweeps until no change");
  cmd->add_flag("--trace", *trace, "Record every scored candidate in the output");
  cmd->add_option("--out", *out_dir, "Output directory (default: print to stdout)");

  cmd->callback([=] {
    const summ::EventDataset dataset = data->load();
    std::vector<summ::LabelId> target_ids;
    for (const std::string& name : split_commas(*target))
      target_ids.push_back(dataset.alphabet().id_of(name));
    const summ::TargetVariable target_var(dataset.alphabet(), target_ids);

    if (*model == "mc") {
      if (*order < 0) throw summ::ConfigError("--order must be >= 0");
      const summ::SummarySpec spec = summ::SummarySpec::kgram(dataset.alphabet(), *order);
      const summ::SummModel fitted =
          summ::fit_model(dataset, target_var, spec, *alpha, *gamma);
      emit_json(*out_dir, "model.json", summ::model_to_json(fitted, dataset.alphabet()));
      return;
    }

    summ::SearchConfig config;
    config.kind = *model == "osumm" ? summ::SummaryKind::ordinal : summ::SummaryKind::binary;
    config.look_back = kappa_value(*kappa);
    config.prior_alpha = *alpha;
    config.penalty_gamma = *gamma;
    config.allow_self_loop = *allow_self;
    config.iterate_to_convergence = *iterate;
    if (!pool->empty()) {
      std::vector<summ::LabelId> ids;
      for (const std::string& name : split_commas(*pool))
        ids.push_back(dataset.alphabet().id_of(name));
      config.candidate_pool = std::move(ids);
    }
    std::vector<summ::TraceEntry> trace_entries;
    const summ::SummModel fitted = summ::influencer_search(
        dataset, target_var, config, *trace ? &trace_entries : nullptr);
    emit_json(*out_dir, "model.json",
              summ::model_to_json(fitted, dataset.alphabet(), *trace ? &trace_entries : nullptr));
  });
}

void setup_eval(CLI::App& app) {
  auto cmd = app.add_subcommand("eval", "Split, tune, and report test log loss per label");
  auto data = std::make_shared<DataArgs>();
  data->attach(cmd);
  auto model = std::make_shared<std::string>("bsumm");
  auto order = std::make_shared<std::int32_t>(1);
  auto target = std::make_shared<std::string>();
  auto grid = std::make_shared<std::string>();
  auto split = std::make_shared<std::string>("0.7,0.15,0.15");
  auto seed = std::make_shared<std::uint64_t>(0);
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--model", *model, "bsumm, osumm, or mc")
      ->check(CLI::IsMember({"bsumm", "osumm", "mc"}));
  cmd->add_option("--order", *order, "Markov chain order (mc only)");
  cmd->add_option("--target", *target, "Labels of interest (default: all retained)");
  cmd->add_option("--grid", *grid, "Override grids: alphas=..;kappas=..;gammas=..");
  cmd->add_option("--split", *split, "Train,dev,test fractions");
  cmd->add_option("--seed", *seed, "Seed for the split shuffle");
  cmd->add_option("--out", *out_dir, "Output directory (default: print to stdout)");

  cmd->callback([=] {
    const summ::EventDataset dataset = data->load();
    summ::EvalConfig config;
    if (*model == "mc") {
      config.markov_baseline = true;
      if (*order < 0) throw summ::ConfigError("--order must be >= 0");
      config.order = *order;
    } else {
      config.kind = *model == "osumm" ? summ::SummaryKind::ordinal : summ::SummaryKind::binary;
    }
    config.grid = parse_grid(*grid);
    const std::vector<double> fractions = parse_doubles(*split, "--split");
    if (fractions.size() != 3) throw summ::ConfigError("--split needs exactly three fractions");
    config.split = summ::SplitSpec{fractions[0], fractions[1], fractions[2], *seed};
    config.labels_of_interest = split_commas(*target);

    const summ::EvalReport report = summ::evaluate_dataset(dataset, config);
    emit_json(*out_dir, "eval.json", summ::eval_report_to_json(report));
    if (!out_dir->empty()) write_artifact(*out_dir, "eval_table.txt", summ::format_eval_table(report));
  });
}

void setup_generate(CLI::App& app) {
  auto cmd = app.add_subcommand("generate", "Sample a dataset from a generative spec");
  auto builtin = std::make_shared<std::string>();
  auto spec_file = std::make_shared<std::string>();
  auto k = std::make_shared<std::optional<std::int64_t>>();
  auto length = std::make_shared<std::optional<std::int64_t>>();
  auto seed = std::make_shared<std::optional<std::uint64_t>>();
  auto format = std::make_shared<std::string>("jsonl");
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--builtin", *builtin, "Built-in scenario name (b1)");
  cmd->add_option("--spec", *spec_file, "Generative spec JSON file");
  cmd->add_option("--k", *k, "Number of sequences");
  cmd->add_option("--length", *length, "Events per sequence");
  cmd->add_option("--seed", *seed, "Generator seed");
  cmd->add_option("--format", *format, "Dataset format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", *out_dir, "Output directory (default: print to stdout)");

  cmd->callback([=] {
    if (builtin->empty() == spec_file->empty())
      throw summ::ConfigError("generate needs exactly one of --builtin or --spec");
    summ::GenerativeSpec spec;
    if (!builtin->empty()) {
      spec = summ::builtin_spec(*builtin);
    } else {
      std::ifstream in(*spec_file);
      if (!in) throw summ::InputError("cannot open spec file '" + *spec_file + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw summ::DataError(std::string("invalid spec JSON: ") + e.what());
      }
      spec = summ::generative_spec_from_json(doc);
    }
    if (k->has_value()) spec.sequence_count = **k;
    if (length->has_value()) spec.sequence_length = **length;
    if (seed->has_value()) spec.seed = **seed;
    spec.validate();

    const summ::EventDataset dataset = summ::generate(spec);
    const bool csv = *format == "csv";
    const std::string content =
        csv ? summ::dataset_to_csv(dataset) : summ::dataset_to_jsonl(dataset);
    if (out_dir->empty()) {
      std::cout << content;
    } else {
      write_artifact(*out_dir, csv ? "dataset.csv" : "dataset.jsonl", content);
      write_artifact(*out_dir, "generative_spec.json",
                     summ::generative_spec_to_json(spec).dump(2) + "\n");
    }
  });
}

void setup_recover(CLI::App& app) {
  auto cmd = app.add_subcommand(
      "recover", "Score influencing-set recovery against a known generator");
  auto builtin = std::make_shared<std::string>("b1");
  auto spec_file = std::make_shared<std::string>();
  auto target = std::make_shared<std::string>("A");
  auto model = std::make_shared<std::string>("bsumm");
  auto kappa = std::make_shared<std::int32_t>(3);
  auto alpha = std::make_shared<double>(0.1);
  auto gamma = std::make_shared<double>(1.0);
  auto runs = std::make_shared<int>(10);
  auto k_grid = std::make_shared<std::string>("10,50,100,500,1000");
  auto length = std::make_shared<std::optional<std::int64_t>>();
  auto seed = std::make_shared<std::uint64_t>(0);
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--builtin", *builtin, "Built-in scenario name (b1)");
  cmd->add_option("--spec", *spec_file, "Generative spec JSON file");
  cmd->add_option("--target", *target, "Label whose influencers are recovered");
  cmd->add_option("--model", *model, "bsumm or osumm")
      ->check(CLI::IsMember({"bsumm", "osumm"}));
  cmd->add_option("--kappa", *kappa, "Look-back window (0 = unbounded)");
  cmd->add_option("--alpha", *alpha, "Dirichlet prior strength");
  cmd->add_option("--gamma", *gamma, "Score penalty weight");
  cmd->add_option("--runs", *runs, "Runs per dataset size");
  cmd->add_option("--k-grid", *k_grid, "Dataset sizes (sequence counts)");
  cmd->add_option("--length", *length, "Events per sequence");
  cmd->add_option("--seed", *seed, "Experiment seed");
  cmd->add_option("--out", *out_dir, "Output directory (default: print to stdout)");

  cmd->callback([=] {
    summ::GenerativeSpec spec;
    if (!spec_file->empty()) {
      std::ifstream in(*spec_file);
      if (!in) throw summ::InputError("cannot open spec file '" + *spec_file + "'");
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw summ::DataError(std::string("invalid spec JSON: ") + e.what());
      }
      spec = summ::generative_spec_from_json(doc);
    } else {
      spec = summ::builtin_spec(*builtin);
    }
    if (length->has_value()) spec.sequence_length = **length;

    summ::SearchConfig config;
    config.kind = *model == "osumm" ? summ::SummaryKind::ordinal : summ::SummaryKind::binary;
    config.look_back = kappa_value(*kappa);
    config.prior_alpha = *alpha;
    config.penalty_gamma = *gamma;

    const std::vector<std::int64_t> k_values = parse_ints(*k_grid, "--k-grid");
    const std::vector<summ::RecoveryPoint> points =
        summ::recovery_experiment(spec, k_values, *runs, config, *target, *seed);
    emit_json(*out_dir, "recovery.json", summ::recovery_to_json(points, config, *seed, *runs));
  });
}

void setup_graph(CLI::App& app) {
  auto cmd = app.add_subcommand("graph", "Learn per-label influencers and export the graph");
  auto data = std::make_shared<DataArgs>();
  data->attach(cmd);
  auto model = std::make_shared<std::string>("bsumm");
  auto kappa = std::make_shared<std::int32_t>(1);
  auto alpha = std::make_shared<double>(1.0);
  auto gamma = std::make_shared<double>(1.0);
  auto allow_self = std::make_shared<bool>(true);
  auto iterate = std::make_shared<bool>(false);
  auto out_dir = std::make_shared<std::string>();
  cmd->add_option("--model", *model, "bsumm or osumm")
      ->check(CLI::IsMember({"bsumm", "osumm"}));
  cmd->add_option("--kappa", *kappa, "Look-back window (0 = unbounded)");
  cmd->add_option("--alpha", *alpha, "Dirichlet prior strength");
  cmd->add_option("--gamma", *gamma, "Score penalty weight");
  cmd->add_flag("--allow-self-loop,!--no-self-loop", *allow_self,
                "Allow labels as their own influencers (default on)");
  cmd->add_flag("--iterate", *iterate, "Repeat forward/backward sweeps until no change");
  cmd->add_option("--out", *out_dir, "Output directory (default: print to stdout)");

  cmd->callback([=] {
    const summ::EventDataset dataset = data->load();
    summ::SearchConfig config;
    config.kind = *model == "osumm" ? summ::SummaryKind::ordinal : summ::SummaryKind::binary;
    config.look_back = kappa_value(*kappa);
    config.prior_alpha = *alpha;
    config.penalty_gamma = *gamma;
    config.allow_self_loop = *allow_self;
    config.iterate_to_convergence = *iterate;

    const summ::InfluenceGraph graph = summ::learn_graph(dataset, config);
    emit_json(*out_dir, "graph.json", summ::graph_to_json(graph, dataset.alphabet()));
    if (!out_dir->empty()) write_artifact(*out_dir, "graph.dot", summ::export_dot(graph));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summary Markov models over event sequences"};
  app.require_subcommand(1);
  setup_learn(app);
  setup_eval(app);
  setup_generate(app);
  setup_recover(app);
  setup_graph(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const summ::Error& e) {
    print_error(e.kind(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
