#include "summ/summary.hpp"

#include <algorithm>
#include <numeric>

namespace summ {

std::string to_string(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::binary: return "binary";
    case SummaryKind::ordinal: return "ordinal";
    case SummaryKind::kgram: return "kgram";
  }
  throw InternalError("unknown summary kind");
}

SummaryKind summary_kind_from_string(std::string_view name) {
  if (name == "binary") return SummaryKind::binary;
  if (name == "ordinal") return SummaryKind::ordinal;
  if (name == "kgram") return SummaryKind::kgram;
  throw InputError("unknown summary kind: " + std::string(name));
}

SummarySpec SummarySpec::binary(std::vector<LabelId> influencers, LookBack look_back) {
  std::vector<LookBack> look_backs(influencers.size(), look_back);
  return binary(std::move(influencers), std::move(look_backs));
}

SummarySpec SummarySpec::binary(std::vector<LabelId> influencers,
                                std::vector<LookBack> look_backs) {
  if (look_backs.size() != influencers.size())
    throw InputError("binary summaries need one look-back per influencer");
  // Sort influencers into canonical order, keeping look-backs paired.
  std::vector<std::size_t> order(influencers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return influencers[a] < influencers[b]; });
  SummarySpec spec;
  spec.kind = SummaryKind::binary;
  spec.influencers.reserve(influencers.size());
  spec.look_backs.reserve(influencers.size());
  for (std::size_t i : order) {
    spec.influencers.push_back(influencers[i]);
    spec.look_backs.push_back(look_backs[i]);
  }
  return spec;
}

SummarySpec SummarySpec::ordinal(std::vector<LabelId> influencers, LookBack look_back) {
  SummarySpec spec;
  spec.kind = SummaryKind::ordinal;
  std::sort(influencers.begin(), influencers.end());
  spec.influencers = std::move(influencers);
  spec.look_backs = {look_back};
  return spec;
}

SummarySpec SummarySpec::kgram(const Alphabet& alphabet, std::int32_t order) {
  SummarySpec spec;
  spec.kind = SummaryKind::kgram;
  spec.influencers.resize(alphabet.size());
  std::iota(spec.influencers.begin(), spec.influencers.end(), 0);
  spec.look_backs = {order};
  return spec;
}

std::int32_t SummarySpec::kgram_order() const {
  if (kind != SummaryKind::kgram || look_backs.size() != 1 || !look_backs[0])
    throw InternalError("kgram_order on a non-kgram spec");
  return *look_backs[0];
}

void SummarySpec::validate(const Alphabet& alphabet) const {
  if (!std::is_sorted(influencers.begin(), influencers.end()))
    throw InputError("influencers must be in canonical (ascending id) order");
  if (std::adjacent_find(influencers.begin(), influencers.end()) != influencers.end())
    throw InputError("influencer set has duplicates");
  for (LabelId id : influencers)
    if (!alphabet.contains(id)) throw InputError("influencer not in alphabet");

  switch (kind) {
    case SummaryKind::binary:
      if (look_backs.size() != influencers.size())
        throw InputError("binary summaries need one look-back per influencer");
      for (const auto& lb : look_backs)
        if (lb && *lb < 1) throw InputError("look-backs must be >= 1 or unbounded");
      break;
    case SummaryKind::ordinal:
      if (look_backs.size() != 1)
        throw InputError("ordinal summaries use a single look-back");
      if (look_backs[0] && *look_backs[0] < 1)
        throw InputError("look-backs must be >= 1 or unbounded");
      break;
    case SummaryKind::kgram:
      if (influencers.size() != alphabet.size())
        throw InputError("kgram summaries require the full alphabet");
      if (look_backs.size() != 1 || !look_backs[0] || *look_backs[0] < 0)
        throw InputError("kgram summaries need a bounded order >= 0");
      break;
  }
}

std::size_t SummaryStateHash::operator()(const SummaryState& s) const {
  // FNV-1a over the kind tag and values.
  std::uint64_t h = 0xCBF29CE484222325ull;
  auto absorb = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  };
  absorb(static_cast<std::uint64_t>(s.kind));
  for (std::int32_t v : s.values) absorb(static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)));
  return static_cast<std::size_t>(h);
}

namespace {

bool occurs_in_window(const Sequence& seq, std::int64_t pos, LabelId label, LookBack look_back) {
  std::int64_t first = 1;
  if (look_back) first = std::max<std::int64_t>(1, pos - *look_back);
  for (std::int64_t j = pos - 1; j >= first; --j)
    if (seq.at(j) == label) return true;
  return false;
}

}  // namespace

SummaryState summarize(const SummarySpec& spec, const Sequence& seq, std::int64_t pos) {
  if (pos < 1 || pos > seq.length() + 1)
    throw InputError("position " + std::to_string(pos) + " out of range");

  SummaryState state;
  state.kind = spec.kind;

  switch (spec.kind) {
    case SummaryKind::binary: {
      state.values.resize(spec.influencers.size());
      for (std::size_t j = 0; j < spec.influencers.size(); ++j)
        state.values[j] = occurs_in_window(seq, pos, spec.influencers[j], spec.look_backs[j]) ? 1 : 0;
      break;
    }
    case SummaryKind::ordinal: {
      // Window scan, then KEEP-LAST masking: only each label's most recent
      // occurrence survives, emitted in ascending position order.
      std::int64_t first = 1;
      const LookBack lb = spec.look_backs[0];
      if (lb) first = std::max<std::int64_t>(1, pos - *lb);
      std::vector<std::pair<std::int64_t, LabelId>> last_at;  // (position, label)
      for (std::int64_t j = first; j < pos; ++j) {
        const LabelId l = seq.at(j);
        if (!std::binary_search(spec.influencers.begin(), spec.influencers.end(), l)) continue;
        auto it = std::find_if(last_at.begin(), last_at.end(),
                               [l](const auto& e) { return e.second == l; });
        if (it == last_at.end())
          last_at.emplace_back(j, l);
        else
          it->first = j;
      }
      std::sort(last_at.begin(), last_at.end());
      state.values.reserve(last_at.size());
      for (const auto& [p, l] : last_at) state.values.push_back(l);
      break;
    }
    case SummaryKind::kgram: {
      const std::int32_t k = spec.kgram_order();
      state.values.resize(static_cast<std::size_t>(k));
      for (std::int32_t j = 0; j < k; ++j) {
        const std::int64_t p = pos - k + j;
        state.values[static_cast<std::size_t>(j)] = p >= 1 ? seq.at(p) : kBoundarySlot;
      }
      break;
    }
  }
  return state;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const SummarySpec& spec) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw SizingError("summary domain size overflows 64 bits (|U| = " +
                      std::to_string(spec.influencers.size()) + ")");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const SummarySpec& spec) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw SizingError("summary domain size overflows 64 bits (|U| = " +
                      std::to_string(spec.influencers.size()) + ")");
  return r;
}

}  // namespace

std::uint64_t domain_size(const SummarySpec& spec) {
  const std::uint64_t n = spec.influencers.size();
  switch (spec.kind) {
    case SummaryKind::binary: {
      if (n >= 64)
        throw SizingError("binary summary domain 2^" + std::to_string(n) + " overflows 64 bits");
      return std::uint64_t(1) << n;
    }
    case SummaryKind::ordinal: {
      // Σ_{i=0..n} n!/i! == Σ over instantiation lengths m of n!/(n-m)!.
      std::uint64_t total = 0;
      std::uint64_t perms = 1;  // n!/(n-m)! for current m, starting at m = 0
      total = checked_add(total, perms, spec);
      for (std::uint64_t m = 1; m <= n; ++m) {
        perms = checked_mul(perms, n - m + 1, spec);
        total = checked_add(total, perms, spec);
      }
      return total;
    }
    case SummaryKind::kgram: {
      const std::int32_t k = spec.kgram_order();
      std::uint64_t total = 1;
      for (std::int32_t i = 0; i < k; ++i) total = checked_mul(total, n + 1, spec);
      return total;
    }
  }
  throw InternalError("unknown summary kind");
}

std::vector<SummaryState> enumerate_domain(const SummarySpec& spec, std::uint64_t cap) {
  const std::uint64_t size = domain_size(spec);
  if (size > cap)
    throw SizingError("summary domain has " + std::to_string(size) +
                      " states, above the cap of " + std::to_string(cap));

  std::vector<SummaryState> states;
  states.reserve(static_cast<std::size_t>(size));
  const std::size_t n = spec.influencers.size();

  switch (spec.kind) {
    case SummaryKind::binary: {
      for (std::uint64_t code = 0; code < size; ++code) {
        SummaryState s{SummaryKind::binary, std::vector<std::int32_t>(n)};
        for (std::size_t j = 0; j < n; ++j) s.values[j] = (code >> j) & 1;
        states.push_back(std::move(s));
      }
      break;
    }
    case SummaryKind::ordinal: {
      // All ordered arrangements of each subset, shortest first, then
      // lexicographic by label id.
      std::vector<std::int32_t> current;
      std::vector<bool> used(n, false);
      auto extend = [&](auto&& self, std::size_t length) -> void {
        if (current.size() == length) {
          states.push_back({SummaryKind::ordinal, current});
          return;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (used[j]) continue;
          used[j] = true;
          current.push_back(spec.influencers[j]);
          self(self, length);
          current.pop_back();
          used[j] = false;
        }
      };
      for (std::size_t length = 0; length <= n; ++length) extend(extend, length);
      break;
    }
    case SummaryKind::kgram: {
      const std::int32_t k = spec.kgram_order();
      std::vector<std::int32_t> digits(static_cast<std::size_t>(k), 0);
      for (std::uint64_t code = 0; code < size; ++code) {
        SummaryState s{SummaryKind::kgram, std::vector<std::int32_t>(static_cast<std::size_t>(k))};
        for (std::int32_t j = 0; j < k; ++j) {
          const std::int32_t d = digits[static_cast<std::size_t>(j)];
          s.values[static_cast<std::size_t>(j)] = d == 0 ? kBoundarySlot : spec.influencers[d - 1];
        }
        states.push_back(std::move(s));
        for (std::int32_t j = k - 1; j >= 0; --j) {  // increment, last slot fastest
          auto& d = digits[static_cast<std::size_t>(j)];
          if (++d <= static_cast<std::int32_t>(n)) break;
          d = 0;
        }
      }
      break;
    }
  }
  return states;
}

bool in_domain(const SummarySpec& spec, const SummaryState& state) {
  if (state.kind != spec.kind) return false;
  const auto& u = spec.influencers;
  switch (spec.kind) {
    case SummaryKind::binary: {
      if (state.values.size() != u.size()) return false;
      return std::all_of(state.values.begin(), state.values.end(),
                         [](std::int32_t v) { return v == 0 || v == 1; });
    }
    case SummaryKind::ordinal: {
      if (state.values.size() > u.size()) return false;
      std::vector<std::int32_t> seen;
      for (std::int32_t v : state.values) {
        if (!std::binary_search(u.begin(), u.end(), v)) return false;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
        seen.push_back(v);
      }
      return true;
    }
    case SummaryKind::kgram: {
      if (state.values.size() != static_cast<std::size_t>(spec.kgram_order())) return false;
      return std::all_of(state.values.begin(), state.values.end(), [&u](std::int32_t v) {
        return v == kBoundarySlot || std::binary_search(u.begin(), u.end(), v);
      });
    }
  }
  return false;
}

std::string format_state(const SummarySpec& spec, const SummaryState& state,
                         const Alphabet& alphabet) {
  if (!in_domain(spec, state)) throw InternalError("state does not belong to the spec's domain");
  std::string out;
  switch (spec.kind) {
    case SummaryKind::binary: {
      for (std::size_t j = 0; j < spec.influencers.size(); ++j) {
        if (j) out += ',';
        out += alphabet.label(spec.influencers[j]);
        if (!state.values[j]) out += "̄";  // combining macron marks absence
      }
      break;
    }
    case SummaryKind::ordinal: {
      out += '[';
      for (std::size_t j = 0; j < state.values.size(); ++j) {
        if (j) out += ',';
        out += alphabet.label(state.values[j]);
      }
      out += ']';
      break;
    }
    case SummaryKind::kgram: {
      out += '(';
      for (std::size_t j = 0; j < state.values.size(); ++j) {
        if (j) out += '|';
        out += state.values[j] == kBoundarySlot ? "⊥" : alphabet.label(state.values[j]);
      }
      out += ')';
      break;
    }
  }
  return out;
}

}  // namespace summ
