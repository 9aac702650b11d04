#include "lambertw/bounds.hpp"

#include <gmp.h>

#include <cmath>
#include <functional>
#include <utility>

#include "interval_util.hpp"

namespace lambertw {

using detail::Iv;

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(
             std::ceil(static_cast<double>(digits) * 3.321928094887363)) +
         4;
}

// -1 below the enclosure, +1 above, 0 inside (unresolvable).
int side_of(const Real& x, const Iv& c) {
  if (x < c.lo) return -1;
  if (x > c.hi) return +1;
  return 0;
}

Real rounded_to(const Real& hi_prec_value, mpfr_prec_t p) {
  return hi_prec_value.to_precision(p, Rounding::nearest);
}

BoundsPair outward(const Real& lo, const Real& hi, BoundSource ls,
                   BoundSource hs, mpfr_prec_t p) {
  return {lo.to_precision(p, Rounding::down), hi.to_precision(p, Rounding::up),
          ls, hs};
}

// Ratio-corrected two-sided expression intervals on (e, +inf).
struct LogPieces {
  Iv l1, l2;
};

LogPieces log_pieces(const Real& x, mpfr_prec_t pw) {
  Iv l1 = detail::iv_ln(detail::iv_exact(x), pw);
  Iv l2 = detail::iv_ln(l1, pw);
  return {l1, l2};
}

Iv three_term_iv(const LogPieces& lp, mpfr_prec_t pw) {
  return detail::iv_add(detail::iv_sub(lp.l1, lp.l2, pw),
                        detail::iv_div(lp.l2, lp.l1, pw), pw);
}

Iv older_lower_iv(const LogPieces& lp, mpfr_prec_t pw) {
  Iv half_ratio = detail::iv_div(lp.l2, detail::iv_mul_2si(lp.l1, 1), pw);
  return detail::iv_add(detail::iv_sub(lp.l1, lp.l2, pw), half_ratio, pw);
}

Iv older_upper_iv(const LogPieces& lp, mpfr_prec_t pw) {
  Iv e = detail::iv_const_e(pw);
  Iv one = detail::iv_exact(Real(1L, pw));
  Iv coeff = detail::iv_div(e, detail::iv_sub(e, one, pw), pw);
  Iv term = detail::iv_mul(coeff, detail::iv_div(lp.l2, lp.l1, pw), pw);
  return detail::iv_add(detail::iv_sub(lp.l1, lp.l2, pw), term, pw);
}

Iv five_term_upper_iv(const LogPieces& lp, mpfr_prec_t pw) {
  Iv two = detail::iv_exact(Real(2L, pw));
  Iv sq_l1 = detail::iv_mul(lp.l1, lp.l1, pw);
  Iv cube_l1 = detail::iv_mul(sq_l1, lp.l1, pw);
  Iv t1 = detail::iv_div(detail::iv_mul(detail::iv_sub(lp.l2, two, pw), lp.l2, pw),
                         detail::iv_mul_2si(sq_l1, 1), pw);
  Iv cube_l2 = detail::iv_mul(detail::iv_mul(lp.l2, lp.l2, pw), lp.l2, pw);
  Iv t2 = detail::iv_div(cube_l2, cube_l1, pw);
  return detail::iv_add(detail::iv_add(three_term_iv(lp, pw), t1, pw), t2, pw);
}

Iv five_term_lower_iv(const LogPieces& lp, mpfr_prec_t pw) {
  Iv two = detail::iv_exact(Real(2L, pw));
  Iv sq_l1 = detail::iv_mul(lp.l1, lp.l1, pw);
  Iv cube_l1 = detail::iv_mul(sq_l1, lp.l1, pw);
  Iv t1 = detail::iv_div(detail::iv_mul(detail::iv_sub(lp.l2, two, pw), lp.l2, pw),
                         detail::iv_mul_2si(sq_l1, 1), pw);
  Real three_halves = mul_2si(Real(3L, pw), -1);
  Iv t3 = detail::iv_div(
      detail::iv_mul(detail::iv_mul(lp.l2, lp.l2, pw),
                     detail::iv_exact(three_halves), pw),
      cube_l1, pw);
  return detail::iv_sub(detail::iv_add(three_term_iv(lp, pw), t1, pw), t3, pw);
}

// sqrt(1 + e x) with a PrecisionError when the offset from the branch point
// cannot be resolved at this precision.
Iv branch_point_radical(const Real& x, mpfr_prec_t pw) {
  Iv one = detail::iv_exact(Real(1L, pw));
  Iv t = detail::iv_mul(detail::iv_const_e(pw), detail::iv_exact(x), pw);
  Iv s = detail::iv_add(one, t, pw);
  if (s.lo.sign() <= 0) {
    throw PrecisionError(
        "1 + e*x cannot be resolved away from the branch point at this "
        "precision");
  }
  return detail::iv_sqrt(s, pw);
}

// Seed of the negative principal interval: e x ln(1+r) / (r (1+r)) with
// r = sqrt(1 + e x).
Iv negative_principal_seed(const Real& x, const Iv& r, mpfr_prec_t pw) {
  Iv one = detail::iv_exact(Real(1L, pw));
  Iv t = detail::iv_mul(detail::iv_const_e(pw), detail::iv_exact(x), pw);
  Iv one_plus_r = detail::iv_add(one, r, pw);
  Iv num = detail::iv_mul(t, detail::iv_ln(one_plus_r, pw), pw);
  Iv den = detail::iv_mul(r, one_plus_r, pw);
  if (den.lo.sign() <= 0) {
    throw PrecisionError("seed denominator underflows near the branch point");
  }
  return detail::iv_div(num, den, pw);
}

// Certified-sign bisection. `sign` must return +1 or -1 when the sign at a
// point is certain and 0 when it cannot be decided. The initial signs are
// the caller's responsibility (they are verified at runtime before calling).
std::pair<Real, Real> bisect_sign_change(
    const std::function<int(const Real&)>& sign, Real a, Real b, int sign_at_a,
    const Real& tol, mpfr_prec_t pw) {
  while (sub(b, a, Rounding::up, pw) > tol) {
    Real mid = mul_2si(add(a, b, Rounding::nearest, pw), -1);
    if (!(mid > a && mid < b)) break;
    int s = sign(mid);
    if (s == 0) break;
    if (s == sign_at_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  if (sub(b, a, Rounding::up, pw) > tol) {
    throw PrecisionError(
        "bisection could not certify the requested number of digits");
  }
  return {a, b};
}

// f1(y) = y^(1/y) (y^2 - y ln y + ln y) - y^2, for y > 1.
int f1_sign(const Real& y, mpfr_prec_t pw) {
  Iv yi = detail::iv_exact(y);
  Iv u = detail::iv_ln(yi, pw);
  Iv s = detail::iv_exp(detail::iv_div(u, yi, pw), pw);
  Iv y2 = detail::iv_mul(yi, yi, pw);
  Iv one = detail::iv_exact(Real(1L, pw));
  Iv t = detail::iv_sub(y2, detail::iv_mul(detail::iv_sub(yi, one, pw), u, pw),
                        pw);
  Iv f = detail::iv_sub(detail::iv_mul(s, t, pw), y2, pw);
  if (detail::iv_positive(f)) return +1;
  if (detail::iv_negative(f)) return -1;
  return 0;
}

// f2(y) = (y - 3) ln y - 2 y.
int f2_sign(const Real& y, mpfr_prec_t pw) {
  Iv yi = detail::iv_exact(y);
  Iv u = detail::iv_ln(yi, pw);
  Iv three = detail::iv_exact(Real(3L, pw));
  Iv f = detail::iv_sub(detail::iv_mul(detail::iv_sub(yi, three, pw), u, pw),
                        detail::iv_mul_2si(yi, 1), pw);
  if (detail::iv_positive(f)) return +1;
  if (detail::iv_negative(f)) return -1;
  return 0;
}

// h(x) = ln x - ln ln x - sqrt(2 ln 2), strictly increasing past e.
int h_sign(const Real& x, mpfr_prec_t pw) {
  LogPieces lp = log_pieces(x, pw);
  Iv s2 = detail::iv_sqrt(detail::iv_mul_2si(detail::iv_const_ln2(pw), 1), pw);
  Iv h = detail::iv_sub(detail::iv_sub(lp.l1, lp.l2, pw), s2, pw);
  if (detail::iv_positive(h)) return +1;
  if (detail::iv_negative(h)) return -1;
  return 0;
}

const Constants& cached_constants() {
  static const Constants c = compute_constants(40);
  return c;
}

}  // namespace

std::string to_string(Branch b) {
  return b == Branch::principal ? "0" : "-1";
}

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::exact_point: return "exact-point";
    case BoundSource::log_log: return "log-log";
    case BoundSource::older_asymptotic: return "older-asymptotic";
    case BoundSource::three_term: return "three-term";
    case BoundSource::five_term_upper: return "five-term-upper";
    case BoundSource::five_term_lower: return "five-term-lower";
    case BoundSource::puiseux_seed: return "puiseux-seed";
    case BoundSource::iterated_seed: return "iterated-seed";
    case BoundSource::quarter_chain: return "quarter-chain";
    case BoundSource::linear_seed: return "linear-seed";
    case BoundSource::linear_cap: return "linear-cap";
    case BoundSource::scaled_log: return "scaled-log";
    case BoundSource::log_log_neg: return "log-log-neg";
    case BoundSource::sqrt2_seed: return "sqrt2-seed";
    case BoundSource::seed_offset: return "seed-offset";
  }
  return "?";
}

std::optional<Real> special_value(Branch branch, const Real& x) {
  if (x.is_nan() || x.is_inf()) return std::nullopt;
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t ph = p + 96;
  if (branch == Branch::principal) {
    if (x.is_zero()) return Real(0L, p);
    if (x.sign() > 0 && x == rounded_to(const_e(ph), p)) return Real(1L, p);
  }
  if (x.sign() < 0) {
    Real neg_inv_e = -div(Real(1L, ph), const_e(ph), Rounding::nearest);
    if (x == rounded_to(neg_inv_e, p)) return Real(-1L, p);
  }
  return std::nullopt;
}

BoundsPair simple_bounds(Branch branch, const Real& x) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t pw = p + kGuardBits;
  if (auto w = special_value(branch, x)) {
    return {*w, *w, BoundSource::exact_point, BoundSource::exact_point};
  }
  const Iv e = detail::iv_const_e(pw);
  const Iv nie = detail::iv_neg_inv_e(pw);
  const Real one(1L, pw);

  if (branch == Branch::principal) {
    if (x < nie.lo) throw DomainError("x below -1/e: outside the W0 domain");
    if (x <= nie.hi) {
      throw PrecisionError("cannot separate x from -1/e at this precision");
    }
    if (x > e.hi) {
      LogPieces lp = log_pieces(x, pw);
      Real lo = detail::iv_sub(lp.l1, lp.l2, pw).lo;
      return outward(lo, lp.l1.hi, BoundSource::log_log, BoundSource::log_log,
                     p);
    }
    if (x >= e.lo) {
      throw PrecisionError("cannot separate x from e at this precision");
    }
    if (x.sign() > 0) {
      Real lo = div(x, e.hi, Rounding::down, pw);
      if (x < 1) {
        return outward(lo, x, BoundSource::linear_seed, BoundSource::linear_cap,
                       p);
      }
      return outward(lo, one, BoundSource::linear_seed, BoundSource::linear_cap,
                     p);
    }
    // (-1/e, 0)
    Iv r = branch_point_radical(x, pw);
    Real lo = detail::iv_sub(r, detail::iv_exact(one), pw).lo;
    BoundSource lo_src = BoundSource::puiseux_seed;
    Real hi = negative_principal_seed(x, r, pw).hi;
    BoundSource hi_src = BoundSource::iterated_seed;
    const Real quarter = mul_2si(Real(-1L, pw), -2);
    if (x > quarter) {
      Iv x4 = detail::iv_add(detail::iv_exact(one),
                             detail::iv_mul_2si(detail::iv_exact(x), 2), pw);
      Iv x2 = detail::iv_add(detail::iv_exact(one),
                             detail::iv_mul_2si(detail::iv_exact(x), 1), pw);
      if (x4.lo.sign() > 0) {
        Real chain_lo = detail::iv_mul_2si(
                            detail::iv_sub(detail::iv_sqrt(x4, pw),
                                           detail::iv_exact(one), pw),
                            -1)
                            .lo;
        Real chain_hi =
            detail::iv_sub(detail::iv_sqrt(x2, pw), detail::iv_exact(one), pw)
                .hi;
        if (chain_lo > lo) {
          lo = chain_lo;
          lo_src = BoundSource::quarter_chain;
        }
        if (chain_hi < hi) {
          hi = chain_hi;
          hi_src = BoundSource::quarter_chain;
        }
      }
    }
    return outward(lo, hi, lo_src, hi_src, p);
  }

  // Lower branch.
  if (x.sign() >= 0) throw DomainError("W_-1 is defined on [-1/e, 0) only");
  if (x < nie.lo) throw DomainError("x below -1/e: outside the W_-1 domain");
  if (x <= nie.hi) {
    throw PrecisionError("cannot separate x from -1/e at this precision");
  }
  const Real quarter = mul_2si(Real(-1L, pw), -2);
  if (x > quarter) {
    Iv m = detail::iv_ln(detail::iv_neg(detail::iv_exact(x)), pw);
    Real lo = detail::iv_div(detail::iv_mul(e, m, pw),
                             detail::iv_sub(e, detail::iv_exact(one), pw), pw)
                  .lo;
    Real hi = detail::iv_sub(m, detail::iv_ln(detail::iv_neg(m), pw), pw).hi;
    return outward(lo, hi, BoundSource::scaled_log, BoundSource::log_log_neg,
                   p);
  }
  Iv r = branch_point_radical(x, pw);
  Iv b0 = detail::iv_sub(detail::iv_exact(Real(-1L, pw)),
                         detail::iv_mul(detail::iv_sqrt2(pw), r, pw), pw);
  Real half = mul_2si(one, -1);
  Real lo = sub(b0.lo, half, Rounding::down, pw);
  return outward(lo, b0.hi, BoundSource::seed_offset, BoundSource::sqrt2_seed,
                 p);
}

BoundsPair older_bounds_w0(const Real& x) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t pw = p + kGuardBits;
  if (auto w = special_value(Branch::principal, x); w && *w == 1) {
    return {*w, *w, BoundSource::exact_point, BoundSource::exact_point};
  }
  if (!(x > detail::iv_const_e(pw).hi)) {
    throw DomainError("the ratio-corrected bounds require x > e");
  }
  LogPieces lp = log_pieces(x, pw);
  return outward(older_lower_iv(lp, pw).lo, older_upper_iv(lp, pw).hi,
                 BoundSource::older_asymptotic, BoundSource::older_asymptotic,
                 p);
}

Real three_term_estimate(const Real& x, Rounding r) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t pw = p + kGuardBits;
  if (auto w = special_value(Branch::principal, x); w && *w == 1) return *w;
  if (!(x > detail::iv_const_e(pw).hi)) {
    throw DomainError("the three-term estimate requires x > e");
  }
  if (r == Rounding::nearest) {
    Real l1 = ln(x, Rounding::nearest, pw);
    Real l2 = ln(l1, Rounding::nearest, pw);
    return (l1 - l2 + l2 / l1).to_precision(p);
  }
  Iv tt = three_term_iv(log_pieces(x, pw), pw);
  return (r == Rounding::down ? tt.lo.to_precision(p, Rounding::down)
                              : tt.hi.to_precision(p, Rounding::up));
}

BoundsPair refined_bounds_w0(const Real& x) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t pw = p + kGuardBits;
  if (auto w = special_value(Branch::principal, x); w && *w == 1) {
    return {*w, *w, BoundSource::exact_point, BoundSource::exact_point};
  }
  if (!(x > detail::iv_const_e(pw).hi)) {
    throw DomainError("refined bounds require x > e");
  }
  const Constants& c = cached_constants();
  LogPieces lp = log_pieces(x, pw);
  Iv tt = three_term_iv(lp, pw);

  if (x < c.x_star_lo) {
    // Below the crossover the three-term expression lies above W0; feeding
    // it through w = ln(x) - ln(w) turns it into a lower estimate.
    Real lo = older_lower_iv(lp, pw).lo;
    BoundSource lo_src = BoundSource::older_asymptotic;
    Real boot = detail::iv_sub(lp.l1, detail::iv_ln(tt, pw), pw).lo;
    if (boot > lo) {
      lo = boot;
      lo_src = BoundSource::three_term;
    }
    return outward(lo, tt.hi, lo_src, BoundSource::three_term, p);
  }
  if (x > c.x_star_hi) {
    Real lo = tt.lo;
    BoundSource lo_src = BoundSource::three_term;
    if (x > c.x_double_star_hi) {
      lo = five_term_lower_iv(lp, pw).lo;
      lo_src = BoundSource::five_term_lower;
    }
    return outward(lo, five_term_upper_iv(lp, pw).hi, lo_src,
                   BoundSource::five_term_upper, p);
  }
  // Inside the x_star enclosure itself: fall back to the always-valid pair.
  return outward(older_lower_iv(lp, pw).lo, older_upper_iv(lp, pw).hi,
                 BoundSource::older_asymptotic, BoundSource::older_asymptotic,
                 p);
}

Constants compute_constants(unsigned digits) {
  if (digits == 0) throw DomainError("digits must be positive");
  const mpfr_prec_t pw = bits_for_digits(digits) + 96;
  const Real tol = pow10_i(-static_cast<long>(digits) - 2, pw, Rounding::down);

  auto f1 = [pw](const Real& y) { return f1_sign(y, pw); };
  auto f2 = [pw](const Real& y) { return f2_sign(y, pw); };
  auto h = [pw](const Real& y) { return h_sign(y, pw); };

  // The proven sign patterns, verified at runtime before bisecting.
  if (f1(Real(2L, pw)) != +1 || f1(Real(20L, pw)) != -1) {
    throw NumericalError("sign pattern of f1 could not be verified");
  }
  if (f2(Real(2L, pw)) != -1 || f2(Real(20L, pw)) != +1) {
    throw NumericalError("sign pattern of f2 could not be verified");
  }
  if (h(Real(4L, pw)) != -1 || h(Real(8L, pw)) != +1) {
    throw NumericalError("sign pattern of the x*** equation could not be "
                         "verified");
  }

  auto [y1a, y1b] =
      bisect_sign_change(f1, Real(2L, pw), Real(20L, pw), +1, tol, pw);
  auto [y2a, y2b] =
      bisect_sign_change(f2, Real(2L, pw), Real(20L, pw), -1, tol, pw);
  auto [x3a, x3b] =
      bisect_sign_change(h, Real(4L, pw), Real(8L, pw), -1, tol, pw);

  Constants out{
      exp(y1a, Rounding::down, pw), exp(y1b, Rounding::up, pw),
      exp(y2a, Rounding::down, pw), exp(y2b, Rounding::up, pw),
      x3a,                          x3b,
      Real(pw),                     Real(pw)};
  Real inv_e = div(Real(1L, pw), const_e(pw), Rounding::nearest);
  out.kappa1 = ln(Real(1L, pw) + inv_e);
  out.kappa2 = Real(1L, pw) - inv_e;
  return out;
}

Real taylor_w0(const Real& x, unsigned terms) {
  if (terms == 0) throw DomainError("terms must be >= 1");
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t p = x.precision();
  const mpfr_prec_t pw = p + kGuardBits;
  const Iv e = detail::iv_const_e(pw);
  const Real radius_lo = div(Real(1L, pw), e.hi, Rounding::down, pw);
  if (!(abs(x) < radius_lo)) {
    throw DomainError("|x| must be strictly below the radius 1/e");
  }
  mpz_t num, den;
  mpz_init(num);
  mpz_init(den);
  Real sum(0L, pw);
  Real xp(1L, pw);
  for (unsigned k = 1; k <= terms; ++k) {
    xp = mul(xp, x, Rounding::nearest, pw);
    mpz_ui_pow_ui(num, k, k - 1);
    mpz_fac_ui(den, k);
    Real term(pw);
    mpfr_mul_z(term.raw(), xp.raw(), num, MPFR_RNDN);
    mpfr_div_z(term.raw(), term.raw(), den, MPFR_RNDN);
    if (k % 2 == 0) {
      sum = sub(sum, term, Rounding::nearest, pw);
    } else {
      sum = add(sum, term, Rounding::nearest, pw);
    }
  }
  mpz_clear(num);
  mpz_clear(den);
  return sum.to_precision(p);
}

}  // namespace lambertw
