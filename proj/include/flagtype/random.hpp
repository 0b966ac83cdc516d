#pragma once

// Reproducible randomness. Every random draw in the library comes from an
// Rng built from a SeedStream; independent streams are derived from a root
// seed by child(index), so results depend only on (root seed, index path)
// and never on thread scheduling.
//
// Split function: child(i) = splitmix64(seed XOR splitmix64(i + 0x9E3779B97F4A7C15)).

#include <cstdint>
#include <random>

#include "flagtype/linalg.hpp"

namespace flagtype {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class SeedStream {
 public:
  constexpr explicit SeedStream(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t value() const { return seed_; }

  constexpr SeedStream child(std::uint64_t index) const {
    return SeedStream(splitmix64(seed_ ^ splitmix64(index + 0x9E3779B97F4A7C15ULL)));
  }

  Rng rng() const { return Rng(seed_); }

 private:
  std::uint64_t seed_;
};

// n x m matrix of independent standard normals.
Matrix gaussian_matrix(int rows, int cols, Rng& rng);

// Gaussian matrix rescaled to unit determinant (a row is negated first when
// the determinant is negative).
Matrix random_unimodular(int n, Rng& rng);

// Haar-distributed special-orthogonal matrix.
Matrix random_rotation(int n, Rng& rng);

// Trace-zero Gaussian matrix normalized to unit Frobenius norm.
Matrix random_traceless_direction(int n, Rng& rng);

}  // namespace flagtype
