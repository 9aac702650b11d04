#include "lambertw/xyyx.hpp"

#include <algorithm>
#include <cmath>

#include "interval_util.hpp"

namespace lambertw {

using detail::Iv;

namespace {

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(
             std::ceil(static_cast<double>(digits) * 3.321928094887363)) +
         4;
}

void require_right_of_one(const Real& x) {
  if (x.is_nan() || x.is_inf() || !(x > 1)) {
    throw DomainError("y(x) is defined for x > 1");
  }
}

// Signed distance to e at generous precision; the caller only needs its
// order of magnitude and sign.
Real distance_to_e(const Real& x, mpfr_prec_t p) {
  return sub(x, const_e(p), Rounding::nearest, p);
}

}  // namespace

Enclosure y_of_x(const Real& x, unsigned digits) {
  require_right_of_one(x);
  if (digits == 0) throw DomainError("digits must be positive");
  const mpfr_prec_t pw = bits_for_digits(digits) + 64;
  // The map x -> -ln(x)/x flattens quadratically at e, so the argument of W
  // is computed with doubled digits to keep y to the requested accuracy.
  const mpfr_prec_t p2 = std::max<mpfr_prec_t>(2 * pw + 64, x.precision());

  const Real d = distance_to_e(x, p2);
  const Real window = pow10_i(-static_cast<long>(digits), pw, Rounding::down);
  if (abs(d) <= window) {
    // y(e) = e with slope -1; a window of twice the offset plus the target
    // width absorbs the quadratic remainder.
    const Real hw =
        add(mul_2si(abs(d), 1), window, Rounding::up, pw);
    Enclosure enc{Branch::principal,
                  sub(const_e(p2, Rounding::down), hw, Rounding::down, p2),
                  add(const_e(p2, Rounding::up), hw, Rounding::up, p2),
                  Real(pw),
                  EvalMethod::slope_window,
                  0,
                  p2,
                  true};
    enc.width_bound = sub(enc.hi, enc.lo, Rounding::up, p2);
    return enc;
  }

  const Real xw = x.to_precision(p2);
  Iv lnx = detail::iv_ln(detail::iv_exact(xw), p2);
  Iv t = detail::iv_neg(detail::iv_div(lnx, detail::iv_exact(xw), p2));

  const bool past_e = d.sign() > 0;
  const Branch branch = past_e ? Branch::principal : Branch::lower;

  unsigned digits_w = digits + 30;
  if (!past_e) {
    // |W_-1| ~ |ln(-t)| blows up as x -> 1+; widen the digit budget.
    Real m = ln(-t.hi, Rounding::nearest, 96);
    if (!m.is_zero() && m.exponent2() > 0) {
      digits_w += static_cast<unsigned>(
          std::ceil(static_cast<double>(m.exponent2()) * 0.302)) + 4;
    }
  }

  Enclosure at_lo = eval_certified(branch, Argument::direct(t.lo), digits_w);
  Enclosure at_hi = eval_certified(branch, Argument::direct(t.hi), digits_w);
  // W0 is increasing, W_-1 decreasing; take the hull accordingly.
  const Real w_lo = past_e ? at_lo.lo : at_hi.lo;
  const Real w_hi = past_e ? at_hi.hi : at_lo.hi;

  Enclosure enc{branch,
                exp(-w_hi, Rounding::down, p2),
                exp(-w_lo, Rounding::up, p2),
                Real(p2),
                EvalMethod::exp_wrapped,
                std::max(at_lo.iterations, at_hi.iterations),
                std::max(at_lo.precision_bits, at_hi.precision_bits),
                at_lo.certified && at_hi.certified};
  enc.width_bound = sub(enc.hi, enc.lo, Rounding::up, p2);
  return enc;
}

Real conjecture_margin(const Real& x, unsigned digits) {
  require_right_of_one(x);
  if (digits == 0) throw DomainError("digits must be positive");
  const mpfr_prec_t probe = std::max<mpfr_prec_t>(x.precision(), 256);
  const Real d = distance_to_e(x, probe);
  if (d.is_zero() ||
      (special_value(Branch::principal, x).has_value() && x > 1)) {
    throw DomainError("the margin degenerates to 0 at x = e");
  }
  // The true margin vanishes quadratically at e; resolve it regardless of
  // how close x sits.
  unsigned digits_eff = digits;
  if (abs(d) < Real(1L, probe)) {
    mpfr_exp_t e2 = abs(d).exponent2();  // negative here
    unsigned lost = static_cast<unsigned>(
        std::ceil(static_cast<double>(-e2) * 0.302));
    digits_eff = std::max(digits, 2 * lost + 16);
  }
  const Enclosure y = y_of_x(x, digits_eff);
  const mpfr_prec_t p = y.lo.precision();

  Iv e = detail::iv_const_e(p);
  Iv one = detail::iv_exact(Real(1L, p));
  Iv num = detail::iv_sub(e, one, p);
  Iv hyp = detail::iv_add(
      one,
      detail::iv_div(detail::iv_mul(num, num, p),
                     detail::iv_sub(detail::iv_exact(x.to_precision(p)), one,
                                    p),
                     p),
      p);
  return sub(y.lo, hyp.hi, Rounding::down, p)
      .to_precision(bits_for_digits(digits) + 32, Rounding::down);
}

Real asymptote_gap(const Real& x, unsigned digits) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  if (digits == 0) throw DomainError("digits must be positive");
  const mpfr_prec_t probe = std::max<mpfr_prec_t>(x.precision(), 256);
  if (!special_value(Branch::principal, x).has_value() &&
      !(x > const_e(probe, Rounding::up))) {
    throw DomainError("the asymptote gap is defined for x >= e");
  }
  // x^y and x cancel to ~ln^2(x)/x of their size; pad the digits by the
  // magnitude of x.
  unsigned digits_w = digits + 20;
  if (x > 1 && x.exponent2() > 0) {
    mpfr_exp_t e2 = x.exponent2();
    if (e2 > 100000000) {
      throw PrecisionError("x is too large for the gap diagnostic");
    }
    digits_w += static_cast<unsigned>(
        std::ceil(static_cast<double>(e2) * 0.30103)) + 1;
  }
  const Enclosure y = y_of_x(x, digits_w);
  const mpfr_prec_t p = std::max(y.lo.precision(), bits_for_digits(digits_w));
  const Real y_mid = mul_2si(y.lo + y.hi, -1).to_precision(p);
  const Real xw = x.to_precision(p);
  const Real lnx = ln(xw, Rounding::nearest, p);
  const Real x_to_y = exp(y_mid * lnx, Rounding::nearest, p);
  return ((x_to_y - xw) / (lnx * lnx)).to_precision(bits_for_digits(digits) + 32);
}

XyResult evaluate_xy(const Real& x, unsigned digits) {
  require_right_of_one(x);
  XyResult out{x, y_of_x(x, digits), Real(), std::nullopt};
  const mpfr_prec_t probe = std::max<mpfr_prec_t>(x.precision(), 256);
  if (special_value(Branch::principal, x).has_value()) {
    out.margin = Real(0L, x.precision());
  } else {
    out.margin = conjecture_margin(x, digits);
  }
  if (special_value(Branch::principal, x).has_value() ||
      x > const_e(probe, Rounding::up)) {
    out.gap = asymptote_gap(x, digits);
  }
  return out;
}

}  // namespace lambertw
