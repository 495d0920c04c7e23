#pragma once

#include <vector>

#include "qmsr/graph.hpp"
#include "qmsr/quantize.hpp"
#include "qmsr/rng.hpp"

namespace qmsr {

// A value agent i observed from in-neighbor `from`, possibly delayed.
struct Observation {
  Node from;
  Value value;
  bool operator==(const Observation&) const = default;
};

using NeighborView = std::vector<Observation>;

// Convex weights for one update: the agent itself plus every retained
// neighbor. Uniform weights are stored as a shared denominator so the
// combination can be formed exactly in integer arithmetic.
struct WeightAssignment {
  int denominator = 1;  // retained neighbors + 1

  double self_weight() const { return 1.0 / denominator; }
  double neighbor_weight() const { return 1.0 / denominator; }
  int neighbor_count() const { return denominator - 1; }
  std::vector<double> neighbor_weights() const {
    return std::vector<double>(static_cast<std::size_t>(neighbor_count()), neighbor_weight());
  }
};

// Drops up to f observations strictly above `own` (largest first) and up to f
// strictly below (smallest first). Among equal extremes the higher neighbor id
// goes first. Survivors keep their input order.
NeighborView msr_filter(Value own, const NeighborView& view, int f);

WeightAssignment compute_weights(int retained_count);

// Quantized convex combination of `own` and the filtered view.
Value normal_update(Value own, const NeighborView& view, int f, QuantizerKind kind, RandomStream& rng);

}  // namespace qmsr
