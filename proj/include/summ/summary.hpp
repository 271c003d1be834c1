#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "summ/sequence.hpp"

namespace summ {

enum class SummaryKind { binary, ordinal, kgram };

std::string to_string(SummaryKind kind);
SummaryKind summary_kind_from_string(std::string_view name);

inline constexpr std::int32_t kBoundarySlot = -1;  // ⊥ padding in k-gram states
inline constexpr std::uint64_t kDefaultDomainCap = std::uint64_t(1) << 22;

// A summary function: maps the history restricted to the influencing labels
// to a discrete summary state.
//   binary  - presence bit per influencer within its own look-back window
//   ordinal - masked order of influencer occurrences within one window
//   kgram   - the previous k labels verbatim, ⊥-padded at sequence start
struct SummarySpec {
  SummaryKind kind = SummaryKind::binary;
  std::vector<LabelId> influencers;   // ascending canonical ids
  std::vector<LookBack> look_backs;   // binary: one per influencer; ordinal/kgram: single entry

  static SummarySpec binary(std::vector<LabelId> influencers, LookBack look_back);
  static SummarySpec binary(std::vector<LabelId> influencers, std::vector<LookBack> look_backs);
  static SummarySpec ordinal(std::vector<LabelId> influencers, LookBack look_back);
  static SummarySpec kgram(const Alphabet& alphabet, std::int32_t order);

  std::int32_t kgram_order() const;

  // Checks ordering/uniqueness of influencers, look-back arity and bounds,
  // and membership in the alphabet. Throws InputError.
  void validate(const Alphabet& alphabet) const;

  friend bool operator==(const SummarySpec&, const SummarySpec&) = default;
};

// Hashable/comparable summary state. Meaning of `values` by kind:
//   binary  - 0/1 flag per influencer, in spec order (length |U|)
//   ordinal - label ids in ascending position order, no repeats (length <= |U|)
//   kgram   - label ids, kBoundarySlot for positions before the start (length k)
struct SummaryState {
  SummaryKind kind = SummaryKind::binary;
  std::vector<std::int32_t> values;

  friend bool operator==(const SummaryState&, const SummaryState&) = default;
};

struct SummaryStateHash {
  std::size_t operator()(const SummaryState& s) const;
};

SummaryState summarize(const SummarySpec& spec, const Sequence& seq, std::int64_t pos);

// |Σ_U|: binary 2^|U|; ordinal Σ_{i=0..|U|} |U|!/i!; kgram (M+1)^k.
// Throws SizingError on 64-bit overflow.
std::uint64_t domain_size(const SummarySpec& spec);

// All states of Σ_U in deterministic order (binary: counting order with the
// first influencer as the low bit; ordinal: by length then lexicographic;
// kgram: mixed-radix counting, last slot fastest, ⊥ first).
// Throws SizingError when the domain exceeds `cap`.
std::vector<SummaryState> enumerate_domain(const SummarySpec& spec,
                                           std::uint64_t cap = kDefaultDomainCap);

// True iff `state` is structurally a member of Σ_U for this spec.
bool in_domain(const SummarySpec& spec, const SummaryState& state);

// Canonical report string: binary "A,B̄,C" (U+0304 macron marks absence),
// ordinal "[B,A]", kgram "(A|B|⊥)".
std::string format_state(const SummarySpec& spec, const SummaryState& state,
                         const Alphabet& alphabet);

}  // namespace summ
