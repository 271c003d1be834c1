#include "summ/sequence.hpp"

#include <algorithm>
#include <unordered_set>

namespace summ {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("alphabet must contain at least one label");
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw InputError("alphabet labels must be non-empty");
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<LabelId>(i));
    if (!inserted) throw InputError("duplicate alphabet label: " + labels_[i]);
  }
}

const std::string& Alphabet::label(LabelId id) const {
  if (!contains(id)) throw InputError("label id out of range: " + std::to_string(id));
  return labels_[static_cast<std::size_t>(id)];
}

std::optional<LabelId> Alphabet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelId Alphabet::id_of(std::string_view label) const {
  auto id = find(label);
  if (!id) throw InputError("label not in alphabet: " + std::string(label));
  return *id;
}

EventDataset::EventDataset(Alphabet alphabet, std::vector<Sequence> sequences)
    : alphabet_(std::move(alphabet)), sequences_(std::move(sequences)) {
  for (const auto& seq : sequences_) {
    for (LabelId id : seq.events) {
      if (!alphabet_.contains(id))
        throw InputError("sequence '" + seq.id + "' contains a label outside the alphabet");
    }
    total_events_ += seq.length();
  }
}

HistoryWindow restrict_history(const Sequence& seq, std::int64_t pos,
                               std::span<const LabelId> labels, LookBack look_back) {
  if (pos < 1 || pos > seq.length() + 1)
    throw InputError("position " + std::to_string(pos) + " out of range for sequence of length " +
                     std::to_string(seq.length()));
  if (look_back && *look_back < 1) throw InputError("look-back must be >= 1 or unbounded");

  std::int64_t first = 1;
  if (look_back) first = std::max<std::int64_t>(1, pos - *look_back);

  HistoryWindow window;
  for (std::int64_t j = first; j < pos; ++j) {
    const LabelId l = seq.at(j);
    if (std::find(labels.begin(), labels.end(), l) != labels.end())
      window.push_back({j, l});
  }
  return window;
}

TargetVariable::TargetVariable(const Alphabet& alphabet, std::vector<LabelId> targets)
    : targets_(std::move(targets)) {
  if (targets_.empty()) throw InputError("target label set must be non-empty");
  std::sort(targets_.begin(), targets_.end());
  if (std::adjacent_find(targets_.begin(), targets_.end()) != targets_.end())
    throw InputError("target label set has duplicates");
  for (LabelId id : targets_)
    if (!alphabet.contains(id)) throw InputError("target label not in alphabet");

  const std::size_t m = alphabet.size();
  has_other_ = targets_.size() < m;
  n_states_ = static_cast<int>(targets_.size()) + (has_other_ ? 1 : 0);
  state_by_label_.assign(m, has_other_ ? static_cast<int>(targets_.size()) : -1);
  for (std::size_t i = 0; i < targets_.size(); ++i)
    state_by_label_[static_cast<std::size_t>(targets_[i])] = static_cast<int>(i);
}

int TargetVariable::state_of(LabelId label) const {
  if (label < 0 || static_cast<std::size_t>(label) >= state_by_label_.size())
    throw InputError("label not in alphabet: id " + std::to_string(label));
  return state_by_label_[static_cast<std::size_t>(label)];
}

int TargetVariable::other_state() const {
  if (!has_other_) throw InputError("target covers the whole alphabet; no OTHER state");
  return static_cast<int>(targets_.size());
}

std::string TargetVariable::state_name(int state, const Alphabet& alphabet) const {
  if (state < 0 || state >= n_states_) throw InputError("state index out of range");
  if (state < static_cast<int>(targets_.size()))
    return alphabet.label(targets_[static_cast<std::size_t>(state)]);
  return "(other)";
}

EventDataset restrict_to_labels(const EventDataset& dataset, std::span<const LabelId> keep) {
  std::unordered_set<LabelId> keep_set(keep.begin(), keep.end());
  const auto& old_labels = dataset.alphabet().labels();

  std::vector<std::string> new_labels;
  std::vector<LabelId> remap(old_labels.size(), -1);
  for (std::size_t i = 0; i < old_labels.size(); ++i) {
    if (keep_set.count(static_cast<LabelId>(i))) {
      remap[i] = static_cast<LabelId>(new_labels.size());
      new_labels.push_back(old_labels[i]);
    }
  }
  if (new_labels.empty()) throw DataError("label filtering removed the whole alphabet");

  std::vector<Sequence> sequences;
  for (const auto& seq : dataset.sequences()) {
    Sequence out{seq.id, {}};
    for (LabelId id : seq.events) {
      const LabelId mapped = remap[static_cast<std::size_t>(id)];
      if (mapped >= 0) out.events.push_back(mapped);
    }
    if (!out.events.empty()) sequences.push_back(std::move(out));
  }
  return EventDataset(Alphabet(std::move(new_labels)), std::move(sequences));
}

}  // namespace summ
