#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "summ/error.hpp"

namespace summ {

// Dense integer id of a label; ids follow the alphabet's canonical order.
using LabelId = std::int32_t;

// Look-back window length in positions; nullopt means unbounded.
using LookBack = std::optional<std::int32_t>;

// Finite, ordered label set. Iteration order of `labels()` is the canonical
// total order used everywhere: summary-state keying, search iteration, and
// binary-vector bit order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(LabelId id) const;
  std::optional<LabelId> find(std::string_view label) const;
  LabelId id_of(std::string_view label) const;  // throws InputError if absent
  bool contains(LabelId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < labels_.size();
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> index_;
};

// One event sequence; positions are implicit 1-based indices.
struct Sequence {
  std::string id;
  std::vector<LabelId> events;

  std::int64_t length() const { return static_cast<std::int64_t>(events.size()); }
  LabelId at(std::int64_t pos) const { return events[static_cast<std::size_t>(pos - 1)]; }
};

// Multiset of label sequences over a shared alphabet.
class EventDataset {
 public:
  EventDataset() = default;
  EventDataset(Alphabet alphabet, std::vector<Sequence> sequences);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Sequence>& sequences() const { return sequences_; }
  std::size_t sequence_count() const { return sequences_.size(); }
  std::int64_t total_events() const { return total_events_; }

 private:
  Alphabet alphabet_;
  std::vector<Sequence> sequences_;
  std::int64_t total_events_ = 0;
};

struct HistoryEvent {
  std::int64_t position;  // 1-based, strictly less than the focal position
  LabelId label;

  friend bool operator==(const HistoryEvent& a, const HistoryEvent& b) {
    return a.position == b.position && a.label == b.label;
  }
};

// Prior events at a focal position, restricted to a label set and window;
// in strictly increasing position order.
using HistoryWindow = std::vector<HistoryEvent>;

// Events at positions max(1, pos-k) .. pos-1 (all j < pos when unbounded)
// whose labels are in `labels`, in position order.
HistoryWindow restrict_history(const Sequence& seq, std::int64_t pos,
                               std::span<const LabelId> labels, LookBack look_back);

// Categorical variable over a target label set X: one state per label of X
// (canonical order) plus a single OTHER state iff X is a strict subset of
// the alphabet.
class TargetVariable {
 public:
  TargetVariable(const Alphabet& alphabet, std::vector<LabelId> targets);

  int state_of(LabelId label) const;  // throws InputError for unknown labels
  int n_states() const { return n_states_; }
  bool has_other() const { return has_other_; }
  int other_state() const;  // throws InputError when no OTHER state exists
  const std::vector<LabelId>& target_labels() const { return targets_; }
  std::string state_name(int state, const Alphabet& alphabet) const;

 private:
  std::vector<LabelId> targets_;      // ascending canonical ids
  std::vector<int> state_by_label_;   // size M
  int n_states_ = 0;
  bool has_other_ = false;
};

// Copy of the dataset keeping only `keep` labels: their events survive with
// order preserved, other events are deleted, emptied sequences dropped, and
// the alphabet shrinks to the kept labels in their original canonical order.
EventDataset restrict_to_labels(const EventDataset& dataset, std::span<const LabelId> keep);

}  // namespace summ
