#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "summ/graphing.hpp"
#include "summ/rng.hpp"
#include "summ/synthgen.hpp"

using namespace summ;

namespace {

EventDataset b1_dataset(std::int64_t k, std::uint64_t seed) {
  GenerativeSpec spec = builtin_spec("b1");
  spec.sequence_count = k;
  spec.seed = seed;
  return generate(spec);
}

EventDataset iid_dataset(const Alphabet& a, int n_seqs, std::int64_t len, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, "test-graph-iid"));
  std::vector<Sequence> seqs;
  for (int i = 0; i < n_seqs; ++i) {
    Sequence s{"r" + std::to_string(i), {}};
    for (std::int64_t j = 0; j < len; ++j)
      s.events.push_back(static_cast<LabelId>(rng.next_below(a.size())));
    seqs.push_back(std::move(s));
  }
  return EventDataset(a, std::move(seqs));
}

bool has_edge(const InfluenceGraph& g, const std::string& from, const std::string& to) {
  return std::any_of(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
    return e.from == from && e.to == to;
  });
}

const GraphEdge& edge_of(const InfluenceGraph& g, const std::string& from,
                         const std::string& to) {
  auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const GraphEdge& e) {
    return e.from == from && e.to == to;
  });
  REQUIRE(it != g.edges.end());
  return *it;
}

SearchConfig b1_config() {
  SearchConfig config;
  config.kind = SummaryKind::binary;
  config.look_back = 3;
  config.prior_alpha = 0.1;
  config.penalty_gamma = 1.0;
  return config;
}

}  // namespace

TEST_CASE("independent uniform data yields an edgeless graph") {
  Alphabet a({"A", "B", "C"});
  EventDataset d = iid_dataset(a, 150, 20, 3);
  SearchConfig config;
  config.look_back = 2;

  InfluenceGraph g = learn_graph(d, config);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.edges.empty());
  for (const auto& node : g.nodes) {
    CHECK(node.influencers.empty());
    CHECK(node.model.has_value());
    CHECK(!node.error.has_value());
  }
}

TEST_CASE("generated dependencies appear as directed edges") {
  EventDataset d = b1_dataset(1000, 7);
  InfluenceGraph g = learn_graph(d, b1_config());

  CHECK(g.nodes_order == std::vector<std::string>{"A", "B", "C", "D", "E"});
  CHECK(has_edge(g, "B", "A"));
  CHECK(has_edge(g, "C", "A"));
  CHECK(has_edge(g, "B", "B"));
  CHECK(has_edge(g, "C", "B"));

  // The positionless labels draw independently, so nothing points at them.
  for (const auto& node : g.nodes)
    if (node.label == "C" || node.label == "D" || node.label == "E")
      CHECK(node.influencers.empty());
}

TEST_CASE("edge effect ratios separate amplifiers from inhibitors") {
  EventDataset d = b1_dataset(1000, 7);
  InfluenceGraph g = learn_graph(d, b1_config());

  // In the generator, a preceding B raises the chance of A (0.30 to 0.35)
  // and a preceding C lowers it (0.30 to 0.10).
  const GraphEdge& ba = edge_of(g, "B", "A");
  REQUIRE(ba.effect_ratio.has_value());
  CHECK(*ba.effect_ratio > 1.0);

  const GraphEdge& ca = edge_of(g, "C", "A");
  REQUIRE(ca.effect_ratio.has_value());
  CHECK(*ca.effect_ratio < 1.0);

  const GraphEdge& cb = edge_of(g, "C", "B");
  REQUIRE(cb.effect_ratio.has_value());
  CHECK(*cb.effect_ratio > 1.0);
}

TEST_CASE("per-label failures are recorded while the rest of the graph emits") {
  Alphabet a({"A", "B"});
  EventDataset d = iid_dataset(a, 10, 5, 3);
  SearchConfig config;
  config.candidate_pool = std::vector<LabelId>{7};  // invalid for every label

  InfluenceGraph g = learn_graph(d, config);
  REQUIRE(g.nodes.size() == 2);
  for (const auto& node : g.nodes) {
    CHECK(!node.model.has_value());
    REQUIRE(node.error.has_value());
    CHECK(node.error->find("candidate pool") != std::string::npos);
  }
  CHECK(g.edges.empty());
  CHECK_NOTHROW(export_dot(g));
}

TEST_CASE("kgram configurations cannot form a graph") {
  Alphabet a({"A", "B"});
  EventDataset d = iid_dataset(a, 10, 5, 3);
  SearchConfig config;
  config.kind = SummaryKind::kgram;
  CHECK_THROWS_AS(learn_graph(d, config), InputError);
}

TEST_CASE("dot export writes nodes then edges in canonical order") {
  InfluenceGraph g;
  g.nodes_order = {"A", "B"};
  g.nodes = {{"A", {}, std::nullopt, std::nullopt}, {"B", {}, std::nullopt, std::nullopt}};
  CHECK(export_dot(g) == "digraph influence {\n  \"A\";\n  \"B\";\n}\n");

  g.edges.push_back({"B", "A", std::nullopt});
  CHECK(export_dot(g) ==
        "digraph influence {\n  \"A\";\n  \"B\";\n  \"B\" -> \"A\";\n}\n");
}

TEST_CASE("dot export quotes special characters in labels") {
  InfluenceGraph g;
  g.nodes_order = {"lab\"el"};
  g.nodes = {{"lab\"el", {}, std::nullopt, std::nullopt}};
  std::string dot = export_dot(g);
  CHECK(dot.find("\"lab\\\"el\"") != std::string::npos);
}

TEST_CASE("the learned graph renders every edge") {
  EventDataset d = b1_dataset(1000, 7);
  InfluenceGraph g = learn_graph(d, b1_config());
  std::string dot = export_dot(g);

  CHECK(dot.find("digraph influence {") == 0);
  for (const auto& label : g.nodes_order)
    CHECK(dot.find("\"" + label + "\";") != std::string::npos);
  CHECK(dot.find("\"B\" -> \"A\";") != std::string::npos);
  CHECK(dot.find("\"C\" -> \"A\";") != std::string::npos);
  CHECK(dot.find("\"B\" -> \"B\";") != std::string::npos);
  CHECK(dot.find("\"C\" -> \"B\";") != std::string::npos);
}
