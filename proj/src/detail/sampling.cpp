#include "detail/sampling.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/erf.hpp>

namespace hypcenter::detail {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, q;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    q = u * u + v * v;
  } while (q >= 1.0 || q == 0.0);
  const double f = std::sqrt(-2.0 * std::log(q) / q);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Vec Rng::unit_vector(int dim) {
  Vec v(dim);
  double n = 0.0;
  while (n < 1e-8) {
    for (int i = 0; i < dim; ++i) v[i] = normal();
    n = v.norm();
  }
  return v / n;
}

Vec Rng::in_ball(int dim, double radius) {
  const double r = radius * std::pow(uniform(), 1.0 / dim);
  return r * unit_vector(dim);
}

namespace {

std::vector<unsigned> first_primes(int count) {
  std::vector<unsigned> out;
  for (unsigned c = 2; static_cast<int>(out.size()) < count; ++c) {
    bool prime = true;
    for (unsigned p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

}  // namespace

double radical_inverse(unsigned base, std::uint64_t index) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

ShiftedHalton::ShiftedHalton(int dim, std::uint64_t seed) : primes_(first_primes(dim)) {
  Rng rng(seed);
  shift_.resize(dim);
  for (auto& s : shift_) s = rng.uniform();
}

std::vector<double> ShiftedHalton::point(std::uint64_t index) const {
  std::vector<double> u(primes_.size());
  for (size_t k = 0; k < primes_.size(); ++k) {
    double v = radical_inverse(primes_[k], index + 1) + shift_[k];
    u[k] = v - std::floor(v);
  }
  return u;
}

Vec cube_to_ball(const std::vector<double>& u, int dim, double radius) {
  const double r = radius * std::pow(u[0], 1.0 / dim);
  Vec dir(dim);
  if (dim == 1) {
    dir[0] = u[1] < 0.5 ? -1.0 : 1.0;
    return r * dir;
  }
  for (int i = 0; i < dim; ++i) {
    // clamp away from 0 and 1 so the inverse normal stays finite
    const double p = std::min(std::max(u[i + 1], 1e-12), 1.0 - 1e-12);
    dir[i] = boost::math::erf_inv(2.0 * p - 1.0);
  }
  const double n = dir.norm();
  if (n == 0.0) {
    dir.setZero();
    dir[0] = 1.0;
    return r * dir;
  }
  return r * dir / n;
}

}  // namespace hypcenter::detail
