#include "lambertw/real.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ostream>

namespace lambertw {

namespace {

mpfr_prec_t check_prec(mpfr_prec_t p) {
  if (p < Real::kMinPrecision) {
    throw PrecisionError("precision_bits must be at least 64, got " +
                         std::to_string(static_cast<long>(p)));
  }
  return p;
}

mpfr_prec_t result_prec(const Real& a, const Real& b, mpfr_prec_t requested) {
  if (requested != 0) return check_prec(requested);
  return a.precision() > b.precision() ? a.precision() : b.precision();
}

mpfr_prec_t result_prec(const Real& a, mpfr_prec_t requested) {
  if (requested != 0) return check_prec(requested);
  return a.precision();
}

}  // namespace

mpfr_rnd_t to_mpfr(Rounding r) {
  switch (r) {
    case Rounding::down:
      return MPFR_RNDD;
    case Rounding::up:
      return MPFR_RNDU;
    default:
      return MPFR_RNDN;
  }
}

Real::Real() {
  mpfr_init2(value_, kMinPrecision);
  mpfr_set_nan(value_);
}

Real::Real(mpfr_prec_t precision_bits) {
  mpfr_init2(value_, check_prec(precision_bits));
  mpfr_set_nan(value_);
}

Real::Real(long value, mpfr_prec_t precision_bits) {
  mpfr_init2(value_, check_prec(precision_bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, mpfr_prec_t precision_bits) {
  mpfr_init2(value_, check_prec(precision_bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_decimal(std::string_view text, mpfr_prec_t precision_bits,
                        Rounding r) {
  std::string buf(text);
  if (buf.empty()) throw ParseError("empty decimal string");
  Real out(check_prec(precision_bits));
  char* end = nullptr;
  mpfr_strtofr(out.value_, buf.c_str(), &end, 10, to_mpfr(r));
  if (end != buf.c_str() + buf.size() || end == buf.c_str()) {
    throw ParseError("malformed decimal string: '" + buf + "'");
  }
  return out;
}

mpfr_prec_t Real::precision() const { return mpfr_get_prec(value_); }

Real Real::to_precision(mpfr_prec_t precision_bits, Rounding r) const {
  Real out(check_prec(precision_bits));
  mpfr_set(out.value_, value_, to_mpfr(r));
  return out;
}

bool Real::is_nan() const { return mpfr_nan_p(value_) != 0; }
bool Real::is_inf() const { return mpfr_inf_p(value_) != 0; }
bool Real::is_zero() const { return mpfr_zero_p(value_) != 0; }

int Real::sign() const {
  if (is_nan()) throw NumericalError("sign of NaN");
  return mpfr_sgn(value_);
}

mpfr_exp_t Real::exponent2() const {
  if (is_nan() || is_inf() || is_zero()) {
    throw NumericalError("exponent of non-regular value");
  }
  return mpfr_get_exp(value_);
}

double Real::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

std::string Real::to_decimal(std::size_t significant, Rounding r) const {
  if (significant == 0) significant = 1;
  if (is_nan()) return "nan";
  if (is_inf()) return mpfr_sgn(value_) < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t exp10;
  {
    // Probe the decimal exponent; digits themselves are discarded.
    char* probe = mpfr_get_str(nullptr, &exp10, 10, 2, value_, MPFR_RNDN);
    mpfr_free_str(probe);
  }
  char* s = nullptr;
  int n;
  if (exp10 >= -4 && exp10 <= 40) {
    long places = static_cast<long>(significant) - exp10;
    if (places < 0) places = 0;
    n = mpfr_asprintf(&s, "%.*R*f", static_cast<int>(places), to_mpfr(r),
                      value_);
  } else {
    n = mpfr_asprintf(&s, "%.*R*e", static_cast<int>(significant - 1),
                      to_mpfr(r), value_);
  }
  if (n < 0 || s == nullptr) throw NumericalError("decimal formatting failed");
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_decimal(20);
}

bool operator==(const Real& a, const Real& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}
bool operator!=(const Real& a, const Real& b) { return !(a == b); }
bool operator<(const Real& a, const Real& b) {
  return mpfr_less_p(a.value_, b.value_) != 0;
}
bool operator<=(const Real& a, const Real& b) {
  return mpfr_lessequal_p(a.value_, b.value_) != 0;
}
bool operator>(const Real& a, const Real& b) {
  return mpfr_greater_p(a.value_, b.value_) != 0;
}
bool operator>=(const Real& a, const Real& b) {
  return mpfr_greaterequal_p(a.value_, b.value_) != 0;
}

bool operator==(const Real& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) == 0;
}
bool operator!=(const Real& a, long b) { return !(a == b); }
bool operator<(const Real& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) < 0;
}
bool operator<=(const Real& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) <= 0;
}
bool operator>(const Real& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) > 0;
}
bool operator>=(const Real& a, long b) {
  return !a.is_nan() && mpfr_cmp_si(a.value_, b) >= 0;
}

Real operator+(const Real& a, const Real& b) {
  return add(a, b, Rounding::nearest);
}
Real operator-(const Real& a, const Real& b) {
  return sub(a, b, Rounding::nearest);
}
Real operator*(const Real& a, const Real& b) {
  return mul(a, b, Rounding::nearest);
}
Real operator/(const Real& a, const Real& b) {
  return div(a, b, Rounding::nearest);
}

Real operator+(const Real& a, long b) {
  Real out(a.precision());
  mpfr_add_si(out.raw(), a.raw(), b, MPFR_RNDN);
  return out;
}
Real operator-(const Real& a, long b) {
  Real out(a.precision());
  mpfr_sub_si(out.raw(), a.raw(), b, MPFR_RNDN);
  return out;
}
Real operator*(const Real& a, long b) {
  Real out(a.precision());
  mpfr_mul_si(out.raw(), a.raw(), b, MPFR_RNDN);
  return out;
}
Real operator/(const Real& a, long b) {
  Real out(a.precision());
  mpfr_div_si(out.raw(), a.raw(), b, MPFR_RNDN);
  return out;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_sub(out.raw(), a, b.raw(), MPFR_RNDN);
  return out;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) {
  Real out(b.precision());
  mpfr_si_div(out.raw(), a, b.raw(), MPFR_RNDN);
  return out;
}

Real operator-(const Real& a) {
  Real out(a.precision());
  mpfr_neg(out.raw(), a.raw(), MPFR_RNDN);
  return out;
}

Real add(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, b, prec));
  mpfr_add(out.raw(), a.raw(), b.raw(), to_mpfr(r));
  return out;
}
Real sub(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, b, prec));
  mpfr_sub(out.raw(), a.raw(), b.raw(), to_mpfr(r));
  return out;
}
Real mul(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, b, prec));
  mpfr_mul(out.raw(), a.raw(), b.raw(), to_mpfr(r));
  return out;
}
Real div(const Real& a, const Real& b, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, b, prec));
  mpfr_div(out.raw(), a.raw(), b.raw(), to_mpfr(r));
  return out;
}

Real ln(const Real& a, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, prec));
  mpfr_log(out.raw(), a.raw(), to_mpfr(r));
  return out;
}
Real exp(const Real& a, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, prec));
  mpfr_exp(out.raw(), a.raw(), to_mpfr(r));
  return out;
}
Real sqrt(const Real& a, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, prec));
  mpfr_sqrt(out.raw(), a.raw(), to_mpfr(r));
  return out;
}
Real sqr(const Real& a, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, prec));
  mpfr_sqr(out.raw(), a.raw(), to_mpfr(r));
  return out;
}
Real abs(const Real& a) {
  Real out(a.precision());
  mpfr_abs(out.raw(), a.raw(), MPFR_RNDN);
  return out;
}
Real pow_si(const Real& a, long e, Rounding r, mpfr_prec_t prec) {
  Real out(result_prec(a, prec));
  mpfr_pow_si(out.raw(), a.raw(), e, to_mpfr(r));
  return out;
}
Real mul_2si(const Real& a, long k) {
  Real out(a.precision());
  mpfr_mul_2si(out.raw(), a.raw(), k, MPFR_RNDN);
  return out;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real next_above(const Real& a) {
  Real out(a);
  mpfr_nextabove(out.raw());
  return out;
}
Real next_below(const Real& a) {
  Real out(a);
  mpfr_nextbelow(out.raw());
  return out;
}

Real const_e(mpfr_prec_t prec, Rounding r) {
  Real one(1L, check_prec(prec));
  return exp(one, r);
}
Real const_ln2(mpfr_prec_t prec, Rounding r) {
  Real out(check_prec(prec));
  mpfr_const_log2(out.raw(), to_mpfr(r));
  return out;
}
Real const_ln10(mpfr_prec_t prec, Rounding r) {
  Real ten(10L, check_prec(prec));
  return ln(ten, r);
}
Real pow10_i(long k, mpfr_prec_t prec, Rounding r) {
  Real out(check_prec(prec));
  Real kk(k, check_prec(prec));
  mpfr_exp10(out.raw(), kk.raw(), to_mpfr(r));
  return out;
}

}  // namespace lambertw
