#pragma once

#include <cstdint>
#include <random>

namespace qmsr {

// Independent, replayable random stream. Streams are keyed by
// (scenario seed, purpose, index) so that per-agent quantizer draws and
// schedule draws never interleave.
class RandomStream {
 public:
  enum class Purpose : std::uint32_t { kQuantizer = 1, kSchedule = 2, kAuxiliary = 3 };

  explicit RandomStream(std::uint64_t seed) : RandomStream(seed, Purpose::kAuxiliary, 0) {}

  RandomStream(std::uint64_t seed, Purpose purpose, std::uint32_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(purpose), index};
    engine_.seed(seq);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t draws() const { return draws_; }

  std::uint64_t operator()() {
    ++draws_;
    return engine_();
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace qmsr
