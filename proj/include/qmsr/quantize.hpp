#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qmsr/rng.hpp"
#include "qmsr/types.hpp"

namespace qmsr {

enum class QuantizerKind { kProbabilistic, kFloor, kCeil };

std::string_view to_string(QuantizerKind kind);
std::optional<QuantizerKind> parse_quantizer_kind(std::string_view text);

// Rounds y to floor(y) with probability ceil(y) - y and to ceil(y) otherwise
// (probabilistic), or deterministically. The probabilistic quantizer draws one
// uniform u and picks the floor when u < ceil(y) - y; integral y draws nothing.
Value quantize(QuantizerKind kind, double y, RandomStream& rng);

// Same rule applied to y = numerator / denominator, evaluated exactly so that
// integral ratios never pick up rounding noise. denominator > 0.
Value quantize_ratio(QuantizerKind kind, Value numerator, Value denominator, RandomStream& rng);

}  // namespace qmsr
