#ifndef LAMBERTW_REAL_HPP
#define LAMBERTW_REAL_HPP

#include <mpfr.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "lambertw/errors.hpp"

namespace lambertw {

// Rounding direction for an individual operation. Enclosure endpoints are
// produced with `down`/`up`; plain iteration runs with `nearest`.
enum class Rounding { nearest, down, up };

mpfr_rnd_t to_mpfr(Rounding r);

// Arbitrary-precision binary floating-point number with an explicit working
// precision, backed by MPFR. Value semantics; every operation states its
// result precision and rounding. The default operators round to nearest at
// the larger precision of the two operands.
class Real {
 public:
  static constexpr mpfr_prec_t kMinPrecision = 64;

  Real();
  explicit Real(mpfr_prec_t precision_bits);
  Real(long value, mpfr_prec_t precision_bits);
  Real(double value, mpfr_prec_t precision_bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Parses a decimal string such as "-0.25", "6288.69", "1e20".
  static Real from_decimal(std::string_view text, mpfr_prec_t precision_bits,
                           Rounding r = Rounding::nearest);

  mpfr_prec_t precision() const;
  // Re-rounds to the given precision. Widening is exact.
  Real to_precision(mpfr_prec_t precision_bits,
                    Rounding r = Rounding::nearest) const;

  bool is_nan() const;
  bool is_inf() const;
  bool is_zero() const;
  int sign() const;  // -1, 0, +1; throws NumericalError on NaN
  // Binary exponent e with |x| in [2^(e-1), 2^e); nonzero finite only.
  mpfr_exp_t exponent2() const;

  double to_double() const;
  // Decimal rendering with `significant` digits, positional for moderate
  // exponents and scientific otherwise.
  std::string to_decimal(std::size_t significant,
                         Rounding r = Rounding::nearest) const;

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

  friend bool operator==(const Real& a, const Real& b);
  friend bool operator!=(const Real& a, const Real& b);
  friend bool operator<(const Real& a, const Real& b);
  friend bool operator<=(const Real& a, const Real& b);
  friend bool operator>(const Real& a, const Real& b);
  friend bool operator>=(const Real& a, const Real& b);

  friend bool operator==(const Real& a, long b);
  friend bool operator!=(const Real& a, long b);
  friend bool operator<(const Real& a, long b);
  friend bool operator<=(const Real& a, long b);
  friend bool operator>(const Real& a, long b);
  friend bool operator>=(const Real& a, long b);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b);
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b);
  friend Real operator/(long a, const Real& b);
  friend Real operator-(const Real& a);

 private:
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

// Directed arithmetic. Result precision is `prec`, or max of the operand
// precisions when `prec` is 0.
Real add(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec = 0);
Real sub(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec = 0);
Real mul(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec = 0);
Real div(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec = 0);

Real ln(const Real& a, Rounding r = Rounding::nearest, mpfr_prec_t prec = 0);
Real exp(const Real& a, Rounding r = Rounding::nearest, mpfr_prec_t prec = 0);
Real sqrt(const Real& a, Rounding r = Rounding::nearest, mpfr_prec_t prec = 0);
Real sqr(const Real& a, Rounding r = Rounding::nearest, mpfr_prec_t prec = 0);
Real abs(const Real& a);
Real pow_si(const Real& a, long e, Rounding r = Rounding::nearest,
            mpfr_prec_t prec = 0);
// x * 2^k, exact apart from the final rounding (which is exact here).
Real mul_2si(const Real& a, long k);

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// Nudge by one ulp at the operand's own precision.
Real next_above(const Real& a);
Real next_below(const Real& a);

// Constants at the requested precision.
Real const_e(mpfr_prec_t prec, Rounding r = Rounding::nearest);
Real const_ln2(mpfr_prec_t prec, Rounding r = Rounding::nearest);
Real const_ln10(mpfr_prec_t prec, Rounding r = Rounding::nearest);
// 10^k, correctly rounded.
Real pow10_i(long k, mpfr_prec_t prec, Rounding r = Rounding::nearest);

}  // namespace lambertw

#endif  // LAMBERTW_REAL_HPP
