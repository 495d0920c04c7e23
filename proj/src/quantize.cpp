#include "qmsr/quantize.hpp"

#include <cmath>

#include "qmsr/errors.hpp"

namespace qmsr {

std::string_view to_string(QuantizerKind kind) {
  switch (kind) {
    case QuantizerKind::kProbabilistic: return "probabilistic";
    case QuantizerKind::kFloor: return "floor";
    case QuantizerKind::kCeil: return "ceil";
  }
  return "?";
}

std::optional<QuantizerKind> parse_quantizer_kind(std::string_view text) {
  if (text == "probabilistic") return QuantizerKind::kProbabilistic;
  if (text == "floor") return QuantizerKind::kFloor;
  if (text == "ceil") return QuantizerKind::kCeil;
  return std::nullopt;
}

Value quantize(QuantizerKind kind, double y, RandomStream& rng) {
  if (!std::isfinite(y)) throw InputError("quantize: non-finite input");
  const double lo = std::floor(y);
  const double hi = std::ceil(y);
  switch (kind) {
    case QuantizerKind::kFloor: return static_cast<Value>(lo);
    case QuantizerKind::kCeil: return static_cast<Value>(hi);
    case QuantizerKind::kProbabilistic: break;
  }
  if (lo == hi) return static_cast<Value>(lo);
  const double p_floor = hi - y;
  return static_cast<Value>(rng.uniform() < p_floor ? lo : hi);
}

Value quantize_ratio(QuantizerKind kind, Value numerator, Value denominator, RandomStream& rng) {
  if (denominator <= 0) throw InputError("quantize_ratio: denominator must be positive");
  Value lo = numerator / denominator;
  if (numerator % denominator != 0 && numerator < 0) --lo;
  const Value remainder = numerator - lo * denominator;  // in [0, denominator)
  if (remainder == 0) return lo;
  switch (kind) {
    case QuantizerKind::kFloor: return lo;
    case QuantizerKind::kCeil: return lo + 1;
    case QuantizerKind::kProbabilistic: break;
  }
  const double p_floor = static_cast<double>(denominator - remainder) / static_cast<double>(denominator);
  return rng.uniform() < p_floor ? lo : lo + 1;
}

}  // namespace qmsr
