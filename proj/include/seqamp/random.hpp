#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "seqamp/linalg.hpp"

namespace seqamp {

// Deterministic random source. All variates are derived from raw mt19937_64
// words through fixed arithmetic (no std::uniform_*_distribution, whose
// output is implementation-defined), so streams are reproducible across
// standard libraries for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  Real uniform01() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [lo, hi] inclusive, via rejection sampling.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  bool coin(Real p = 0.5) { return uniform01() < p; }

  // Standard normal via Box-Muller (cosine branch).
  Real gaussian() {
    const Real u1 = 1.0 - uniform01();  // (0, 1]
    const Real u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex gaussian_complex() { return {gaussian(), gaussian()}; }

  // Uniform over the closed unit disk |z| <= 1.
  Complex unit_disk() {
    const Real r = std::sqrt(uniform01());
    const Real phi = 2.0 * std::numbers::pi * uniform01();
    return std::polar(r, phi);
  }

  Complex unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform01()); }

  // Independent child stream; decouples consumers from each other's draw
  // counts so adding draws in one place does not shift another's stream.
  Rng fork() {
    std::uint64_t z = next() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 engine_;
};

// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
// R-diagonal phase absorbed into Q.
inline Matrix random_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_complex();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
  }
  return q;
}

// Normalized random state vector.
inline Vector random_state(int n, Rng& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian_complex();
  return v / v.norm();
}

}  // namespace seqamp
