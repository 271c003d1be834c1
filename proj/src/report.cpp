#include "summ/report.hpp"

#include <algorithm>
#include <utility>

#include "summ/error.hpp"

namespace summ {

namespace {

nlohmann::json look_backs_to_json(const SummarySpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (const LookBack& lb : spec.look_backs) {
    if (lb)
      out.push_back(*lb);
    else
      out.push_back(nullptr);
  }
  return out;
}

nlohmann::json spec_to_json(const SummarySpec& spec, const Alphabet& alphabet) {
  nlohmann::json out;
  out["kind"] = to_string(spec.kind);
  nlohmann::json names = nlohmann::json::array();
  for (LabelId id : spec.influencers) names.push_back(alphabet.label(id));
  out["influencers"] = std::move(names);
  out["look_backs"] = look_backs_to_json(spec);
  if (spec.kind == SummaryKind::kgram) out["order"] = spec.kgram_order();
  return out;
}

nlohmann::json score_to_json(const ScoreReport& score) {
  return nlohmann::json{{"log_likelihood", score.log_likelihood},
                        {"free_parameters", score.free_parameters},
                        {"penalty_gamma", score.penalty_gamma},
                        {"score", score.score}};
}

nlohmann::json search_config_to_json(const SearchConfig& config) {
  nlohmann::json out;
  out["kind"] = to_string(config.kind);
  out["look_back"] = config.look_back ? nlohmann::json(*config.look_back) : nlohmann::json(nullptr);
  out["alpha"] = config.prior_alpha;
  out["gamma"] = config.penalty_gamma;
  out["allow_self_loop"] = config.allow_self_loop;
  out["iterate_to_convergence"] = config.iterate_to_convergence;
  return out;
}

}  // namespace

nlohmann::json parameters_to_json(const SummModel& model, const Alphabet& alphabet) {
  const ParameterTable& params = model.params;

  std::vector<const ParameterTable::ProbMap::value_type*> rows;
  rows.reserve(params.rows().size());
  for (const auto& row : params.rows()) rows.push_back(&row);
  std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
    return a->first.values < b->first.values;
  });

  nlohmann::json states = nlohmann::json::array();
  for (int s = 0; s < model.target.n_states(); ++s)
    states.push_back(model.target.state_name(s, alphabet));

  nlohmann::json row_docs = nlohmann::json::array();
  for (const auto* row : rows) {
    nlohmann::json doc;
    doc["values"] = row->first.values;
    doc["state"] = format_state(params.spec(), row->first, alphabet);
    doc["theta"] = row->second;
    row_docs.push_back(std::move(doc));
  }

  nlohmann::json out;
  out["alpha"] = params.alpha();
  out["states"] = std::move(states);
  out["unseen_probability"] = params.uniform_prob();
  out["rows"] = std::move(row_docs);
  return out;
}

nlohmann::json trace_entry_to_json(const TraceEntry& entry, const Alphabet& alphabet) {
  nlohmann::json proposed = nlohmann::json::array();
  for (LabelId id : entry.proposed) proposed.push_back(alphabet.label(id));
  return nlohmann::json{{"phase", entry.phase},
                        {"candidate", alphabet.label(entry.candidate)},
                        {"proposed", std::move(proposed)},
                        {"score", entry.score},
                        {"accepted", entry.accepted}};
}

nlohmann::json model_to_json(const SummModel& model, const Alphabet& alphabet,
                             const std::vector<TraceEntry>* trace) {
  nlohmann::json target_labels = nlohmann::json::array();
  for (LabelId id : model.target.target_labels()) target_labels.push_back(alphabet.label(id));

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["target"] = {{"labels", std::move(target_labels)},
                   {"n_states", model.target.n_states()},
                   {"has_other", model.target.has_other()}};
  out["spec"] = spec_to_json(model.spec, alphabet);
  nlohmann::json influencers = nlohmann::json::array();
  for (LabelId id : model.influencers()) influencers.push_back(alphabet.label(id));
  out["influencers"] = std::move(influencers);
  out["score"] = score_to_json(model.score);
  out["parameters"] = parameters_to_json(model, alphabet);
  if (trace) {
    nlohmann::json entries = nlohmann::json::array();
    for (const TraceEntry& entry : *trace) entries.push_back(trace_entry_to_json(entry, alphabet));
    out["trace"] = std::move(entries);
  }
  return out;
}

nlohmann::json eval_report_to_json(const EvalReport& report) {
  nlohmann::json per_label = nlohmann::json::array();
  for (const LabelEval& e : report.per_label) {
    nlohmann::json doc;
    doc["label"] = e.label;
    doc["model"] = e.model;
    doc["alpha"] = e.alpha;
    doc["look_back"] = e.look_back ? nlohmann::json(*e.look_back) : nlohmann::json(nullptr);
    doc["gamma"] = e.gamma ? nlohmann::json(*e.gamma) : nlohmann::json(nullptr);
    doc["influencers"] = e.influencers;
    doc["dev_log_likelihood"] = e.dev_log_likelihood;
    doc["test_log_likelihood"] = e.test_log_likelihood;
    per_label.push_back(std::move(doc));
  }

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["model"] = report.model;
  if (report.model.rfind("mc-", 0) == 0) out["baseline_form"] = "direct-target-fit";
  out["retained_labels"] = report.retained_labels;
  out["labels_of_interest"] = report.labels_of_interest;
  out["per_label"] = std::move(per_label);
  out["macro_avg_test_log_likelihood"] = report.macro_avg_test_log_likelihood;
  return out;
}

nlohmann::json recovery_to_json(const std::vector<RecoveryPoint>& points,
                                const SearchConfig& config, std::uint64_t seed, int runs) {
  nlohmann::json point_docs = nlohmann::json::array();
  for (const RecoveryPoint& p : points) {
    point_docs.push_back(nlohmann::json{{"sequences", p.sequences},
                                        {"mean_f1", p.mean_f1},
                                        {"std_error", p.std_error},
                                        {"run_f1", p.runs}});
  }
  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["seed"] = seed;
  out["runs"] = runs;
  out["config"] = search_config_to_json(config);
  out["points"] = std::move(point_docs);
  return out;
}

nlohmann::json graph_to_json(const InfluenceGraph& graph, const Alphabet& alphabet) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const GraphNode& node : graph.nodes) {
    nlohmann::json doc;
    doc["label"] = node.label;
    doc["influencers"] = node.influencers;
    if (node.model) {
      doc["score"] = score_to_json(node.model->score);
      doc["parameters"] = parameters_to_json(*node.model, alphabet);
    }
    if (node.error) doc["error"] = *node.error;
    nodes.push_back(std::move(doc));
  }

  nlohmann::json edges = nlohmann::json::array();
  for (const GraphEdge& edge : graph.edges) {
    nlohmann::json doc;
    doc["from"] = edge.from;
    doc["to"] = edge.to;
    if (edge.effect_ratio) doc["effect_ratio"] = *edge.effect_ratio;
    edges.push_back(std::move(doc));
  }

  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["config"] = search_config_to_json(graph.config);
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out;
}

nlohmann::json generative_spec_to_json(const GenerativeSpec& spec) {
  nlohmann::json conditions = nlohmann::json::array();
  for (const GenerativeCondition& c : spec.conditions) {
    conditions.push_back(nlohmann::json{{"label", spec.alphabet.label(c.label)},
                                        {"look_back", c.look_back}});
  }
  nlohmann::json out;
  out["schema_version"] = kSchemaVersion;
  out["alphabet"] = spec.alphabet.labels();
  out["conditions"] = std::move(conditions);
  out["table"] = spec.table;
  out["influencing_sets"] = spec.influencing_sets;
  out["sequence_length"] = spec.sequence_length;
  out["sequence_count"] = spec.sequence_count;
  out["seed"] = spec.seed;
  return out;
}

GenerativeSpec generative_spec_from_json(const nlohmann::json& doc) {
  auto require = [&](const char* field) -> const nlohmann::json& {
    if (!doc.is_object() || !doc.contains(field))
      throw DataError(std::string("generative spec is missing '") + field + "'");
    return doc.at(field);
  };

  GenerativeSpec spec;
  try {
    spec.alphabet = Alphabet(require("alphabet").get<std::vector<std::string>>());
    for (const auto& c : require("conditions")) {
      const std::string label = c.at("label").get<std::string>();
      const auto id = spec.alphabet.find(label);
      if (!id) throw DataError("generative spec condition label '" + label + "' is not in the alphabet");
      spec.conditions.push_back(GenerativeCondition{*id, c.at("look_back").get<std::int32_t>()});
    }
    spec.table = require("table").get<std::vector<std::vector<double>>>();
    if (doc.contains("influencing_sets"))
      spec.influencing_sets =
          doc.at("influencing_sets").get<std::map<std::string, std::vector<std::string>>>();
    if (doc.contains("sequence_length"))
      spec.sequence_length = doc.at("sequence_length").get<std::int64_t>();
    if (doc.contains("sequence_count"))
      spec.sequence_count = doc.at("sequence_count").get<std::int64_t>();
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed generative spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace summ
