#include "summ/graphing.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <utility>

#include "summ/error.hpp"
#include "summ/parallel.hpp"

namespace summ {

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// θ̂_{x|parent present alone} / θ̂_{x|no parents} for the child's own state.
// Only meaningful while the summary domain stays small enough to read, so
// callers restrict it to models with at most two parents.
double effect_ratio_for(const SummModel& model, LabelId parent) {
  const std::vector<LabelId>& parents = model.spec.influencers;
  SummaryState none;
  none.kind = model.spec.kind;
  SummaryState alone;
  alone.kind = model.spec.kind;
  if (model.spec.kind == SummaryKind::binary) {
    none.values.assign(parents.size(), 0);
    alone.values.assign(parents.size(), 0);
    const auto it = std::find(parents.begin(), parents.end(), parent);
    alone.values[static_cast<std::size_t>(it - parents.begin())] = 1;
  } else {
    alone.values = {parent};
  }
  const int target_state = 0;  // single-label targets put the label first
  return model.params.prob(target_state, alone) / model.params.prob(target_state, none);
}

}  // namespace

InfluenceGraph learn_graph(const EventDataset& dataset, const SearchConfig& config) {
  if (config.kind == SummaryKind::kgram)
    throw InputError("kgram models have no influencing set, so no graph to learn");

  const Alphabet& alphabet = dataset.alphabet();
  InfluenceGraph graph;
  graph.config = config;
  graph.nodes_order = alphabet.labels();
  graph.nodes.resize(alphabet.size());

  parallel_for(alphabet.size(), [&](std::size_t i) {
    const LabelId id = static_cast<LabelId>(i);
    GraphNode node;
    node.label = alphabet.label(id);
    try {
      const TargetVariable target(alphabet, {id});
      SummModel model = influencer_search(dataset, target, config);
      for (LabelId parent : model.influencers()) node.influencers.push_back(alphabet.label(parent));
      node.model = std::move(model);
    } catch (const Error& e) {
      node.error = e.what();
    }
    graph.nodes[i] = std::move(node);
  });

  for (const GraphNode& node : graph.nodes) {
    if (!node.model) continue;
    const std::vector<LabelId>& parents = node.model->spec.influencers;
    for (LabelId parent : parents) {
      GraphEdge edge;
      edge.from = alphabet.label(parent);
      edge.to = node.label;
      if (parents.size() <= 2) edge.effect_ratio = effect_ratio_for(*node.model, parent);
      graph.edges.push_back(std::move(edge));
    }
  }
  return graph;
}

std::string export_dot(const InfluenceGraph& graph) {
  std::ostringstream out;
  out << "digraph influence {\n";
  for (const std::string& label : graph.nodes_order) out << "  " << dot_quote(label) << ";\n";
  for (const GraphEdge& edge : graph.edges)
    out << "  " << dot_quote(edge.from) << " -> " << dot_quote(edge.to) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace summ
