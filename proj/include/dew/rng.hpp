#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "tensor_core.hpp"

namespace dew {

// Deterministic RNG with cheap substream derivation: substream(seed, index)
// gives independent streams for concurrent multistarts. Gaussian variates go
// through an explicit Box-Muller so results do not depend on the standard
// library's normal_distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    next();
    next();
  }

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed, 0xd1b54a32d192ed03ull * (index + 1)));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    return {re, gaussian()};
  }

  CVec haar_vector(int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_gaussian();
    return v / v.norm();
  }

  CMat gaussian_matrix(int rows, int cols) {
    CMat A(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) A(r, c) = complex_gaussian();
    return A;
  }

 private:
  explicit Rng(std::uint64_t raw, int) : state_(raw) {}

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    return z ^ (z >> 27);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dew
