#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "summ/sequence.hpp"

namespace summ {

enum class DatasetFormat { auto_detect, csv, jsonl };

DatasetFormat dataset_format_from_string(std::string_view name);

// Loads a dataset from delimited text (header "seq_id,label", rows of one
// sequence contiguous) or line-delimited JSON ({"id":..., "events":[...]}).
// auto_detect sniffs by extension, then by leading '{'. The alphabet is the
// sorted set of observed labels unless an explicit label list is supplied
// (which fixes the canonical order and must cover every observed label).
EventDataset load_dataset(const std::filesystem::path& path,
                          DatasetFormat format = DatasetFormat::auto_detect,
                          const std::optional<std::vector<std::string>>& alphabet = std::nullopt);

EventDataset parse_dataset(std::istream& in, DatasetFormat format,
                           const std::optional<std::vector<std::string>>& alphabet = std::nullopt);

std::string dataset_to_jsonl(const EventDataset& dataset);
std::string dataset_to_csv(const EventDataset& dataset);

// Whole-file atomic write (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

void save_dataset(const EventDataset& dataset, const std::filesystem::path& path,
                  DatasetFormat format = DatasetFormat::jsonl);

}  // namespace summ
