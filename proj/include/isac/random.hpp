#pragma once

#include <cstdint>
#include <random>

#include "isac/types.hpp"

namespace isac {

/// Independent random streams drawn from one scenario seed.
enum class Stream : std::uint64_t {
  kUserPlacement = 1,
  kChannels = 2,
  kRcsPhases = 3,
  kWaveform = 4,
  kNoise = 5,
  kInitialization = 6,
  kTest = 99,
};

/// Seeded generator. Substreams are keyed by (seed, stream, index) through a
/// SplitMix64 mix, so draws in one stream never shift another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, Stream stream,
                       std::uint64_t index = 0);

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return normal_(engine_); }
  /// CN(0, 1): independent real/imaginary parts of variance 1/2.
  cdouble complex_normal();
  CVector complex_normal(int n);
  CMatrix complex_normal(int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace isac
