#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qclab/complex_matrix.hpp"
#include "qclab/rational.hpp"

namespace qclab {

// Deterministic RNG. All floating draws are derived from raw 64-bit output
// so streams are reproducible independent of the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream for case `index` split off a suite-level seed.
  static Rng split(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t u64() { return engine_(); }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return u64() % n; }
  double gauss() {
    double u1 = unit(), u2 = unit();
    while (u1 <= 1e-300) u1 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }
  cd cgauss() { return cd(gauss(), gauss()); }

  // Random probability vector with the given denominator, all entries
  // positive: an exact rational distribution.
  std::vector<Rational> rational_distribution(std::size_t size, std::int64_t denominator);

 private:
  std::mt19937_64 engine_;
};

// Haar-ish random unitary (Gram-Schmidt of a Ginibre matrix).
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

// Random density matrix of the given rank (defaults to full rank).
ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank = 0);

// Random pure state amplitudes.
std::vector<cd> random_state_vector(Rng& rng, std::size_t dim);

// Random POVM with `outcomes` PSD elements summing to identity.
std::vector<ComplexMatrix> random_povm(Rng& rng, std::size_t dim, std::size_t outcomes);

}  // namespace qclab
