#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summ/search.hpp"

namespace summ {

struct GraphNode {
  std::string label;
  std::vector<std::string> influencers;
  std::optional<SummModel> model;   // absent when the per-label search failed
  std::optional<std::string> error;
};

struct GraphEdge {
  std::string from;  // influencer (parent)
  std::string to;    // influenced label
  // θ̂_{x|parent present alone} / θ̂_{x|no parents}; > 1 amplifying,
  // < 1 inhibiting. Present only when the child has at most 2 parents.
  std::optional<double> effect_ratio;
};

// Directed influence graph over the alphabet: one node per label, an edge
// Z → X for every learned membership Z ∈ Pa(X).
struct InfluenceGraph {
  std::vector<std::string> nodes_order;  // canonical label order
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  SearchConfig config;
};

// Runs influencer_search once per alphabet label as target; per-label
// failures are recorded on the node and the rest of the graph still emits.
InfluenceGraph learn_graph(const EventDataset& dataset, const SearchConfig& config);

// DOT text: node statements then edge statements, both in canonical label
// order; byte-stable across runs.
std::string export_dot(const InfluenceGraph& graph);

}  // namespace summ
