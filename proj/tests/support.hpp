#ifndef LAMBERTW_TESTS_SUPPORT_HPP
#define LAMBERTW_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include "lambertw/real.hpp"

namespace testsupport {

using lambertw::Real;

inline Real dec(const std::string& s, mpfr_prec_t prec = 192) {
  return Real::from_decimal(s, prec);
}

inline double rel_gap(const Real& a, const Real& b) {
  Real d = lambertw::abs(a - b);
  Real s = lambertw::max(lambertw::abs(a), Real(1L, 64));
  return (d / s).to_double();
}

// Deterministic sample streams for the property tests.
class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
  }

  // Log-uniform over (lo, hi), both positive.
  double log_uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    return std::exp(d(rng_));
  }

  unsigned integer(unsigned lo, unsigned hi) {
    std::uniform_int_distribution<unsigned> d(lo, hi);
    return d(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testsupport

#endif  // LAMBERTW_TESTS_SUPPORT_HPP
