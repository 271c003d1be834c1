#pragma once

#include <json.hpp>

#include "summ/evaluation.hpp"
#include "summ/graphing.hpp"
#include "summ/synthgen.hpp"

// JSON shapes for every artifact the CLI writes. Field names are frozen in
// docs/file-formats.md; every top-level document carries schema_version.

namespace summ {

inline constexpr int kSchemaVersion = 1;

nlohmann::json parameters_to_json(const SummModel& model, const Alphabet& alphabet);
nlohmann::json model_to_json(const SummModel& model, const Alphabet& alphabet,
                             const std::vector<TraceEntry>* trace = nullptr);
nlohmann::json trace_entry_to_json(const TraceEntry& entry, const Alphabet& alphabet);
nlohmann::json eval_report_to_json(const EvalReport& report);
nlohmann::json recovery_to_json(const std::vector<RecoveryPoint>& points,
                                const SearchConfig& config, std::uint64_t seed, int runs);
nlohmann::json graph_to_json(const InfluenceGraph& graph, const Alphabet& alphabet);

// GenerativeSpec round-trip (the `generate` subcommand's --spec input).
nlohmann::json generative_spec_to_json(const GenerativeSpec& spec);
GenerativeSpec generative_spec_from_json(const nlohmann::json& doc);

}  // namespace summ
