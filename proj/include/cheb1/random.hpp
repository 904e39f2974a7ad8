#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cheb1/core.hpp"

namespace cheb1 {

/// SplitMix64 step; used to derive well-separated seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream seed for (seed, n, trial); distinct inputs give
/// unrelated streams, so trials can run in any order or in parallel.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= n + 0x632be59bd9b4e019ULL;
  std::uint64_t b = splitmix64(s);
  s ^= trial + 0x9e6c63d0876a9a47ULL;
  std::uint64_t c = splitmix64(s);
  return a ^ (b * 0x2545f4914f6cdd1dULL) ^ c;
}

/// mt19937_64 with explicit output transforms so that a given seed yields
/// the same values on every platform. Uniforms come from the top 53 bits;
/// normals from the Box-Muller transform
///   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)
/// with u1 in (0,1], consuming two uniforms per pair.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline DenseMatrix random_normal_matrix(std::size_t m, std::size_t n, NormalRng& rng) {
  std::vector<double> data(m * n);
  for (double& x : data) x = rng.normal();
  return DenseMatrix(m, n, std::move(data));
}

/// Standard-normal matrix redrawn until it has unique row and column peaks.
/// Ties have probability zero, so a redraw is not expected in practice.
inline DenseMatrix random_pc_matrix(std::size_t m, std::size_t n, NormalRng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    DenseMatrix a = random_normal_matrix(m, n, rng);
    if (preserves_chebyshev(a).pc) return a;
  }
  throw Error("failed to draw a matrix with unique peaks in 100 attempts");
}

/// Chebyshev vector with standard-normal components (zero has probability
/// zero; redrawn if it occurs).
inline ChebVector random_cheb_vector(std::size_t k, NormalRng& rng) {
  std::vector<double> v(k);
  for (double& x : v) {
    do {
      x = rng.normal();
    } while (x == 0.0);
  }
  return ChebVector(std::move(v));
}

}  // namespace cheb1
