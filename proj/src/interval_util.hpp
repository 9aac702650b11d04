#ifndef LAMBERTW_SRC_INTERVAL_UTIL_HPP
#define LAMBERTW_SRC_INTERVAL_UTIL_HPP

#include "lambertw/real.hpp"

// Internal outward-rounded evaluation helper. Every operation rounds the
// lower endpoint down and the upper endpoint up, so a chain of these
// operations yields a guaranteed two-sided enclosure of the exact value.
// This is deliberately minimal: just what the closed-form bound expressions
// and the endpoint sign checks need.

namespace lambertw::detail {

struct Iv {
  Real lo;
  Real hi;
};

inline Iv iv_exact(const Real& x) { return {x, x}; }

inline Iv iv_add(const Iv& a, const Iv& b, mpfr_prec_t p) {
  return {add(a.lo, b.lo, Rounding::down, p), add(a.hi, b.hi, Rounding::up, p)};
}

inline Iv iv_sub(const Iv& a, const Iv& b, mpfr_prec_t p) {
  return {sub(a.lo, b.hi, Rounding::down, p), sub(a.hi, b.lo, Rounding::up, p)};
}

inline Iv iv_neg(const Iv& a) { return {-a.hi, -a.lo}; }

inline Iv iv_mul(const Iv& a, const Iv& b, mpfr_prec_t p) {
  const Real d1 = mul(a.lo, b.lo, Rounding::down, p);
  const Real d2 = mul(a.lo, b.hi, Rounding::down, p);
  const Real d3 = mul(a.hi, b.lo, Rounding::down, p);
  const Real d4 = mul(a.hi, b.hi, Rounding::down, p);
  const Real u1 = mul(a.lo, b.lo, Rounding::up, p);
  const Real u2 = mul(a.lo, b.hi, Rounding::up, p);
  const Real u3 = mul(a.hi, b.lo, Rounding::up, p);
  const Real u4 = mul(a.hi, b.hi, Rounding::up, p);
  return {min(min(d1, d2), min(d3, d4)), max(max(u1, u2), max(u3, u4))};
}

// Requires 0 outside [b.lo, b.hi].
inline Iv iv_div(const Iv& a, const Iv& b, mpfr_prec_t p) {
  if (b.lo.sign() <= 0 && b.hi.sign() >= 0) {
    throw NumericalError("interval division by an interval containing zero");
  }
  const Real d1 = div(a.lo, b.lo, Rounding::down, p);
  const Real d2 = div(a.lo, b.hi, Rounding::down, p);
  const Real d3 = div(a.hi, b.lo, Rounding::down, p);
  const Real d4 = div(a.hi, b.hi, Rounding::down, p);
  const Real u1 = div(a.lo, b.lo, Rounding::up, p);
  const Real u2 = div(a.lo, b.hi, Rounding::up, p);
  const Real u3 = div(a.hi, b.lo, Rounding::up, p);
  const Real u4 = div(a.hi, b.hi, Rounding::up, p);
  return {min(min(d1, d2), min(d3, d4)), max(max(u1, u2), max(u3, u4))};
}

// Requires a.lo > 0.
inline Iv iv_ln(const Iv& a, mpfr_prec_t p) {
  if (a.lo.sign() <= 0) {
    throw NumericalError("interval log of a non-positive interval");
  }
  return {ln(a.lo, Rounding::down, p), ln(a.hi, Rounding::up, p)};
}

inline Iv iv_exp(const Iv& a, mpfr_prec_t p) {
  return {exp(a.lo, Rounding::down, p), exp(a.hi, Rounding::up, p)};
}

// Requires a.lo >= 0; the caller decides what a negative lower endpoint
// means (usually: precision exhausted near a branch point).
inline Iv iv_sqrt(const Iv& a, mpfr_prec_t p) {
  return {sqrt(a.lo, Rounding::down, p), sqrt(a.hi, Rounding::up, p)};
}

inline Iv iv_mul_2si(const Iv& a, long k) {
  return {mul_2si(a.lo, k), mul_2si(a.hi, k)};
}

inline bool iv_positive(const Iv& a) { return a.lo.sign() > 0; }
inline bool iv_negative(const Iv& a) { return a.hi.sign() < 0; }

inline Iv iv_const_e(mpfr_prec_t p) {
  return {const_e(p, Rounding::down), const_e(p, Rounding::up)};
}

// Enclosure of -1/e.
inline Iv iv_neg_inv_e(mpfr_prec_t p) {
  const Iv e = iv_const_e(p);
  const Real one(1L, p);
  return {-div(one, e.lo, Rounding::up, p), -div(one, e.hi, Rounding::down, p)};
}

inline Iv iv_const_ln2(mpfr_prec_t p) {
  return {const_ln2(p, Rounding::down), const_ln2(p, Rounding::up)};
}

inline Iv iv_sqrt2(mpfr_prec_t p) {
  const Real two(2L, p);
  return {sqrt(two, Rounding::down, p), sqrt(two, Rounding::up, p)};
}

}  // namespace lambertw::detail

#endif  // LAMBERTW_SRC_INTERVAL_UTIL_HPP
