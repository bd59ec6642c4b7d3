#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hypcenter/geometry.hpp"

namespace hypcenter::detail {

// Bit-reproducible uniform and normal variates on top of mt19937_64; the
// standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec unit_vector(int dim);
  // Uniform in the Euclidean ball of the given radius.
  Vec in_ball(int dim, double radius);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Randomly shifted Halton sequence in [0,1)^dim.
class ShiftedHalton {
 public:
  ShiftedHalton(int dim, std::uint64_t seed);
  std::vector<double> point(std::uint64_t index) const;
  int dim() const { return static_cast<int>(primes_.size()); }

 private:
  std::vector<unsigned> primes_;
  std::vector<double> shift_;
};

double radical_inverse(unsigned base, std::uint64_t index);

/// Maps u in [0,1)^(dim+1) to the Euclidean ball of radius `radius`.
Vec cube_to_ball(const std::vector<double>& u, int dim, double radius);

}  // namespace hypcenter::detail
