#include "summ/dataset_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "summ/error.hpp"

namespace summ {

namespace {

struct RawSequence {
  std::string id;
  std::vector<std::string> events;
};

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<RawSequence> parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw DataError("dataset file is empty");
  ++line_no;
  strip_cr(line);
  if (line != "seq_id,label")
    throw ParseError("expected header 'seq_id,label'", line_no);

  std::vector<RawSequence> sequences;
  std::set<std::string> finished;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'seq_id,label'", line_no);
    std::string id = line.substr(0, comma);
    std::string label = line.substr(comma + 1);
    if (id.empty()) throw ParseError("empty seq_id", line_no);
    if (label.empty()) throw ParseError("empty label", line_no);
    if (sequences.empty() || sequences.back().id != id) {
      if (finished.count(id))
        throw ParseError("rows for sequence '" + id + "' are not contiguous", line_no);
      if (!sequences.empty()) finished.insert(sequences.back().id);
      sequences.push_back(RawSequence{std::move(id), {}});
    }
    sequences.back().events.push_back(std::move(label));
  }
  if (sequences.empty()) throw DataError("dataset file has no event rows");
  return sequences;
}

std::vector<RawSequence> parse_jsonl(std::istream& in) {
  std::vector<RawSequence> sequences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("events"))
      throw ParseError("expected an object with 'id' and 'events'", line_no);
    if (!obj["id"].is_string() || obj["id"].get<std::string>().empty())
      throw ParseError("'id' must be a non-empty string", line_no);
    if (!obj["events"].is_array())
      throw ParseError("'events' must be an array of labels", line_no);
    RawSequence seq;
    seq.id = obj["id"].get<std::string>();
    for (const auto& ev : obj["events"]) {
      if (!ev.is_string() || ev.get<std::string>().empty())
        throw ParseError("event labels must be non-empty strings", line_no);
      seq.events.push_back(ev.get<std::string>());
    }
    sequences.push_back(std::move(seq));
  }
  if (sequences.empty()) throw DataError("dataset file has no sequences");
  return sequences;
}

EventDataset assemble(std::vector<RawSequence> raw,
                      const std::optional<std::vector<std::string>>& alphabet_labels) {
  Alphabet alphabet = [&] {
    if (alphabet_labels) return Alphabet(*alphabet_labels);
    std::set<std::string> observed;
    for (const RawSequence& seq : raw)
      for (const std::string& label : seq.events) observed.insert(label);
    return Alphabet(std::vector<std::string>(observed.begin(), observed.end()));
  }();

  std::vector<Sequence> sequences;
  sequences.reserve(raw.size());
  for (RawSequence& seq : raw) {
    Sequence out;
    out.id = std::move(seq.id);
    out.events.reserve(seq.events.size());
    for (const std::string& label : seq.events) {
      const auto id = alphabet.find(label);
      if (!id) throw DataError("label '" + label + "' is not in the supplied alphabet");
      out.events.push_back(*id);
    }
    sequences.push_back(std::move(out));
  }
  return EventDataset(std::move(alphabet), std::move(sequences));
}

DatasetFormat sniff_stream(std::istream& in) {
  const int c = in.peek();
  return c == '{' ? DatasetFormat::jsonl : DatasetFormat::csv;
}

DatasetFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return DatasetFormat::csv;
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return DatasetFormat::jsonl;
  return DatasetFormat::auto_detect;
}

}  // namespace

DatasetFormat dataset_format_from_string(std::string_view name) {
  if (name == "csv") return DatasetFormat::csv;
  if (name == "jsonl" || name == "json") return DatasetFormat::jsonl;
  if (name == "auto") return DatasetFormat::auto_detect;
  throw ConfigError("unknown dataset format '" + std::string(name) + "' (csv, jsonl, auto)");
}

EventDataset parse_dataset(std::istream& in, DatasetFormat format,
                           const std::optional<std::vector<std::string>>& alphabet) {
  if (format == DatasetFormat::auto_detect) format = sniff_stream(in);
  std::vector<RawSequence> raw =
      format == DatasetFormat::csv ? parse_csv(in) : parse_jsonl(in);
  return assemble(std::move(raw), alphabet);
}

EventDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                          const std::optional<std::vector<std::string>>& alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open dataset file '" + path.string() + "'");
  if (format == DatasetFormat::auto_detect) {
    const DatasetFormat by_ext = format_from_extension(path);
    format = by_ext == DatasetFormat::auto_detect ? sniff_stream(in) : by_ext;
  }
  return parse_dataset(in, format, alphabet);
}

std::string dataset_to_jsonl(const EventDataset& dataset) {
  std::string out;
  for (const Sequence& seq : dataset.sequences()) {
    nlohmann::json obj;
    obj["id"] = seq.id;
    nlohmann::json events = nlohmann::json::array();
    for (LabelId id : seq.events) events.push_back(dataset.alphabet().label(id));
    obj["events"] = std::move(events);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string dataset_to_csv(const EventDataset& dataset) {
  auto check_plain = [](const std::string& text, const char* what) {
    if (text.find_first_of(",\r\n") != std::string::npos)
      throw DataError(std::string(what) + " '" + text + "' cannot be written as delimited text");
  };
  std::string out = "seq_id,label\n";
  for (const Sequence& seq : dataset.sequences()) {
    check_plain(seq.id, "sequence id");
    for (LabelId id : seq.events) {
      const std::string& label = dataset.alphabet().label(id);
      check_plain(label, "label");
      out += seq.id;
      out += ',';
      out += label;
      out += '\n';
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write to '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("failed to move '" + tmp.string() + "' into place: " + ec.message());
  }
}

void save_dataset(const EventDataset& dataset, const std::filesystem::path& path,
                  DatasetFormat format) {
  if (format == DatasetFormat::auto_detect) {
    const DatasetFormat by_ext = format_from_extension(path);
    format = by_ext == DatasetFormat::auto_detect ? DatasetFormat::jsonl : by_ext;
  }
  const std::string content =
      format == DatasetFormat::csv ? dataset_to_csv(dataset) : dataset_to_jsonl(dataset);
  write_file_atomic(path, content);
}

}  // namespace summ
