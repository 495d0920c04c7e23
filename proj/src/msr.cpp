#include "qmsr/msr.hpp"

#include <algorithm>
#include <numeric>

#include "qmsr/errors.hpp"

namespace qmsr {

NeighborView msr_filter(Value own, const NeighborView& view, int f) {
  if (f < 0) throw InputError("msr_filter: f must be nonnegative");
  std::vector<Node> ids;
  ids.reserve(view.size());
  for (const auto& o : view) ids.push_back(o.from);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("msr_filter: duplicate neighbor id in view");
  }

  std::vector<std::size_t> above, below;
  for (std::size_t k = 0; k < view.size(); ++k) {
    if (view[k].value > own) above.push_back(k);
    if (view[k].value < own) below.push_back(k);
  }
  std::sort(above.begin(), above.end(), [&](std::size_t a, std::size_t b) {
    if (view[a].value != view[b].value) return view[a].value > view[b].value;
    return view[a].from > view[b].from;
  });
  std::sort(below.begin(), below.end(), [&](std::size_t a, std::size_t b) {
    if (view[a].value != view[b].value) return view[a].value < view[b].value;
    return view[a].from > view[b].from;
  });

  std::vector<bool> removed(view.size(), false);
  const auto drop = [&](const std::vector<std::size_t>& order) {
    const std::size_t count = std::min(order.size(), static_cast<std::size_t>(f));
    for (std::size_t k = 0; k < count; ++k) removed[order[k]] = true;
  };
  drop(above);
  drop(below);

  NeighborView retained;
  for (std::size_t k = 0; k < view.size(); ++k)
    if (!removed[k]) retained.push_back(view[k]);
  return retained;
}

WeightAssignment compute_weights(int retained_count) {
  if (retained_count < 0) throw InputError("compute_weights: negative count");
  return WeightAssignment{retained_count + 1};
}

Value normal_update(Value own, const NeighborView& view, int f, QuantizerKind kind, RandomStream& rng) {
  const NeighborView retained = msr_filter(own, view, f);
  const WeightAssignment w = compute_weights(static_cast<int>(retained.size()));
  Value numerator = own;
  for (const auto& o : retained) numerator += o.value;
  return quantize_ratio(kind, numerator, w.denominator, rng);
}

}  // namespace qmsr
