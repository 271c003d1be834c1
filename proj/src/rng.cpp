#include "summ/rng.hpp"

namespace summ {

std::size_t draw_categorical(SplitMix64& rng, std::span<const double> probs) {
  if (probs.empty()) throw InputError("cannot draw from an empty distribution");
  const double u = rng.next_unit();
  double cum = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  // Rounding left u at or past the accumulated mass; return the last
  // positive-probability entry.
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0) return i;
  return probs.size() - 1;
}

}  // namespace summ
