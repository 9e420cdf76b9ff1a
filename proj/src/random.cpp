#include "isac/random.hpp"

#include <cmath>

namespace isac {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ static_cast<std::uint64_t>(stream));
  key = splitmix64(key ^ index);
  return Rng(key);
}

cdouble Rng::complex_normal() {
  static const double kScale = std::sqrt(0.5);
  const double re = normal();
  const double im = normal();
  return {kScale * re, kScale * im};
}

CVector Rng::complex_normal(int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMatrix Rng::complex_normal(int rows, int cols) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

}  // namespace isac
