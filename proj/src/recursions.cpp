#include "lambertw/recursions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "interval_util.hpp"
#include "lambertw/certify.hpp"

namespace lambertw {

using detail::Iv;

namespace {

constexpr mpfr_prec_t kGuardBits = 32;

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(
             std::ceil(static_cast<double>(digits) * 3.321928094887363)) +
         4;
}

const Constants& cached_constants() {
  static const Constants c = compute_constants(40);
  return c;
}

// c^(2^n) by repeated squaring with one-sided rounding.
Real pow_2n(Real c, unsigned n, Rounding r, mpfr_prec_t p) {
  Real out = c.to_precision(p, r);
  for (unsigned i = 0; i < n; ++i) out = mul(out, out, r, p);
  return out;
}

// Exact 2^(-2^n).
Real half_pow_2n(unsigned n, mpfr_prec_t p) {
  if (n > 60) {
    throw PrecisionError("iteration-count bound out of representable range");
  }
  return mul_2si(Real(1L, p), -(1L << n));
}

Real bound_gt_e(const std::optional<Iv>& l1, unsigned n, mpfr_prec_t p) {
  const Real one(1L, p);
  const Iv e = detail::iv_const_e(p);
  Real kappa1_hi =
      ln(add(one, div(one, e.lo, Rounding::up, p), Rounding::up, p),
         Rounding::up, p);
  Real uniform = pow_2n(kappa1_hi, n, Rounding::up, p);
  if (!l1) return uniform;
  Iv l2 = detail::iv_ln(*l1, p);
  if (l2.lo.sign() <= 0) return uniform;
  Iv coeff = detail::iv_div(e, detail::iv_sub(e, detail::iv_exact(one), p), p);
  Iv ratio = detail::iv_mul(coeff, detail::iv_div(l2, *l1, p), p);
  Iv diff = detail::iv_sub(*l1, l2, p);
  if (!(diff.lo > one)) return uniform;
  Real num = pow_2n(ratio.hi, n, Rounding::up, p);
  Real den = div(pow_2n(diff.lo, n, Rounding::down, p), diff.lo,
                 Rounding::down, p);
  return min(uniform, div(num, den, Rounding::up, p));
}

Real bound_zero_to_e(unsigned n, mpfr_prec_t p) {
  const Real one(1L, p);
  const Iv e = detail::iv_const_e(p);
  Real k2_hi = sub(one, div(one, e.hi, Rounding::down, p), Rounding::up, p);
  Real k2_lo = sub(one, div(one, e.lo, Rounding::up, p), Rounding::down, p);
  Real powv = div(pow_2n(k2_hi, n, Rounding::up, p), k2_lo, Rounding::up, p);
  return div(powv, Real(5L, p), Rounding::up, p);
}

Real bound_neg_principal(unsigned n, mpfr_prec_t p) {
  Real tenth_hi = div(Real(1L, p), Real(10L, p), Rounding::up, p);
  return pow_2n(tenth_hi, n, Rounding::up, p);
}

Real bound_neg_lower(const std::optional<Iv>& beta0, unsigned n,
                     mpfr_prec_t p) {
  Real uniform = half_pow_2n(n, p);
  if (!beta0) return uniform;
  // Sharper factor 1/(|beta0| |1+beta0|) on (-1/4, 0), raised to 2^n - 1.
  const Real one(1L, p);
  Iv mag = detail::iv_neg(*beta0);
  Iv mag1 = detail::iv_neg(detail::iv_add(detail::iv_exact(one), *beta0, p));
  if (mag.lo.sign() <= 0 || mag1.lo.sign() <= 0) return uniform;
  Iv c = detail::iv_mul(mag, mag1, p);
  Real f_hi = div(one, c.lo, Rounding::up, p);
  Real f_lo = div(one, c.hi, Rounding::down, p);
  if (f_lo.sign() <= 0) return uniform;
  Real fpow =
      div(pow_2n(f_hi, n, Rounding::up, p), f_lo, Rounding::up, p);
  return min(uniform, mul(uniform, fpow, Rounding::up, p));
}

void check_region_match(Region region, Branch branch, const Argument& arg) {
  if (region_of(branch, arg) != region) {
    throw DomainError("argument is not in region " + to_string(region));
  }
}

Real residual_of(const Argument& arg, const Real& w, mpfr_prec_t p) {
  if (arg.is_log_form()) {
    // ln w + w - ell, the log-form residual (w > 1 on this path).
    return ln(w, Rounding::nearest, p) + w - arg.ell_at(p);
  }
  return w * exp(w, Rounding::nearest, p) - arg.value_at(p);
}

}  // namespace

std::string to_string(Region r) {
  switch (r) {
    case Region::gt_e: return "gt-e";
    case Region::zero_to_e: return "zero-to-e";
    case Region::neg_principal: return "neg-principal";
    case Region::neg_lower_left: return "neg-lower-left";
    case Region::neg_lower_right: return "neg-lower-right";
  }
  return "?";
}

Branch branch_of(Region r) {
  return (r == Region::neg_lower_left || r == Region::neg_lower_right)
             ? Branch::lower
             : Branch::principal;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::lambda: return "lambda";
    case Method::beta: return "beta";
    case Method::newton: return "newton";
    case Method::halley: return "halley";
    case Method::fsc: return "fsc";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "lambda") return Method::lambda;
  if (name == "beta") return Method::beta;
  if (name == "newton") return Method::newton;
  if (name == "halley") return Method::halley;
  if (name == "fsc") return Method::fsc;
  throw ParseError("unknown method '" + name + "'");
}

Argument Argument::direct(Real x) {
  return Argument(Form::direct, std::move(x));
}

Argument Argument::log_of(Real ell) {
  if (!(ell > 1)) {
    throw DomainError("log-form arguments require ell = ln(x) > 1");
  }
  return Argument(Form::log_of, std::move(ell));
}

Argument Argument::pow10(Real exp10) {
  const mpfr_prec_t p = exp10.precision() + kGuardBits;
  if (!(mul(exp10, const_ln10(p), Rounding::nearest, p) > 1)) {
    throw DomainError("pow10 arguments require exp10 * ln(10) > 1");
  }
  return Argument(Form::pow10, std::move(exp10));
}

Real Argument::value_at(mpfr_prec_t prec) const {
  if (form_ != Form::direct) {
    throw DomainError("log-form argument has no direct value");
  }
  return prec > raw_.precision() ? raw_.to_precision(prec) : raw_;
}

Real Argument::ell_at(mpfr_prec_t prec) const {
  return ell_at(prec, Rounding::nearest);
}

Real Argument::ell_at(mpfr_prec_t prec, Rounding r) const {
  switch (form_) {
    case Form::direct:
      if (raw_.sign() <= 0) {
        throw DomainError("ln(x) requires x > 0");
      }
      return ln(raw_, r, prec);
    case Form::log_of:
      return raw_.to_precision(prec, r);
    case Form::pow10:
      // exp10 is positive here, so the rounding direction is preserved.
      return mul(raw_, const_ln10(prec, r), r, prec);
  }
  throw DomainError("unreachable argument form");
}

Argument Argument::at_precision(mpfr_prec_t prec) const {
  return Argument(form_, raw_.to_precision(prec));
}

Region classify(Branch branch, const Real& x) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  if (special_value(branch, x)) {
    throw DomainError("special point; handled upstream of classify");
  }
  const mpfr_prec_t pw = x.precision() + kGuardBits;
  const Iv e = detail::iv_const_e(pw);
  const Iv nie = detail::iv_neg_inv_e(pw);
  if (branch == Branch::principal) {
    if (x < nie.lo) throw DomainError("x below -1/e: outside the W0 domain");
    if (x <= nie.hi) {
      throw PrecisionError("cannot separate x from -1/e at this precision");
    }
    if (x > e.hi) return Region::gt_e;
    if (x >= e.lo) {
      throw PrecisionError("cannot separate x from e at this precision");
    }
    if (x.sign() > 0) return Region::zero_to_e;
    return Region::neg_principal;
  }
  if (x.sign() >= 0) throw DomainError("W_-1 is defined on [-1/e, 0) only");
  if (x < nie.lo) throw DomainError("x below -1/e: outside the W_-1 domain");
  if (x <= nie.hi) {
    throw PrecisionError("cannot separate x from -1/e at this precision");
  }
  const Real quarter = mul_2si(Real(-1L, pw), -2);
  return x <= quarter ? Region::neg_lower_left : Region::neg_lower_right;
}

Region region_of(Branch branch, const Argument& arg) {
  if (arg.is_log_form()) {
    if (branch != Branch::principal) {
      throw DomainError("log-form arguments describe x > e on W0 only");
    }
    return Region::gt_e;
  }
  return classify(branch, arg.raw());
}

Real beta_start(Region region, const Argument& arg) {
  const mpfr_prec_t pw = arg.raw().precision();
  check_region_match(region, branch_of(region), arg);
  switch (region) {
    case Region::gt_e: {
      Real ell = arg.ell_at(pw);
      return ell - ln(ell, Rounding::nearest, pw);
    }
    case Region::zero_to_e:
      return div(arg.value_at(pw), const_e(pw), Rounding::nearest, pw);
    case Region::neg_principal: {
      const Real x = arg.value_at(pw);
      Real s = 1 + const_e(pw) * x;
      if (s.sign() <= 0) {
        throw PrecisionError(
            "1 + e*x underflows near the branch point; raise the precision");
      }
      Real r = sqrt(s, Rounding::nearest, pw);
      return const_e(pw) * x * ln(1 + r, Rounding::nearest, pw) /
             (r * (1 + r));
    }
    case Region::neg_lower_left: {
      const Real x = arg.value_at(pw);
      Real s = 1 + const_e(pw) * x;
      if (s.sign() <= 0) {
        throw PrecisionError(
            "1 + e*x underflows near the branch point; raise the precision");
      }
      return -1 - sqrt(Real(2L, pw), Rounding::nearest, pw) *
                      sqrt(s, Rounding::nearest, pw);
    }
    case Region::neg_lower_right: {
      const Real x = arg.value_at(pw);
      Real m = ln(-x, Rounding::nearest, pw);
      return m - ln(-m, Rounding::nearest, pw);
    }
  }
  throw DomainError("unreachable region");
}

Real beta_step(const Argument& arg, const Real& beta) {
  const mpfr_prec_t pw =
      std::max(arg.raw().precision(), beta.precision());
  Real one_plus = add(beta, Real(1L, pw), Rounding::nearest, pw);
  if (one_plus.is_zero()) {
    throw NumericalError(
        "1 + beta vanished at working precision; raise the precision");
  }
  Real log_quot(pw);
  if (arg.is_log_form()) {
    if (beta.sign() <= 0) {
      throw NumericalError("log-form step requires a positive iterate");
    }
    log_quot = arg.ell_at(pw) - ln(beta, Rounding::nearest, pw);
  } else {
    Real quot = div(arg.value_at(pw), beta, Rounding::nearest, pw);
    if (quot.sign() <= 0) {
      throw NumericalError("x/beta must be positive");
    }
    log_quot = ln(quot, Rounding::nearest, pw);
  }
  return div(beta, one_plus, Rounding::nearest, pw) * (1 + log_quot);
}

IterationTrace beta_iterate(Branch branch, const Argument& arg, unsigned n) {
  const Region region = region_of(branch, arg);
  const mpfr_prec_t pw = arg.raw().precision();
  const bool lower = branch == Branch::lower;

  IterationTrace trace{Method::beta, region, {}};
  trace.entries.reserve(n + 1);
  Real b = beta_start(region, arg);
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) {
      Real next = beta_step(arg, b);
      bool ok = true;
      switch (region) {
        case Region::gt_e:
        case Region::zero_to_e:
          ok = next > b && next.sign() > 0;
          break;
        case Region::neg_principal:
          ok = next < b && next > -1 && next.sign() < 0;
          break;
        case Region::neg_lower_left:
        case Region::neg_lower_right:
          // beta_1 drops below the limit; from then on the sequence climbs.
          ok = (k == 1 ? next < b : next > b) && next < -1;
          break;
      }
      if (!ok) {
        throw NumericalError(
            "monotonicity violated at step " + std::to_string(k) +
            ": working precision exhausted, raise the precision");
      }
      b = std::move(next);
    }
    std::optional<Real> apriori;
    if (!(lower && k == 0)) {
      apriori = beta_error_bound(region, arg, k);
    }
    trace.entries.push_back(
        TraceEntry{k, b, std::move(apriori), residual_of(arg, b, pw)});
  }
  return trace;
}

Real beta_error_bound(Region region, const Argument& arg, unsigned n) {
  if (n == 0 &&
      (region == Region::neg_lower_left ||
       region == Region::neg_lower_right)) {
    throw DomainError(
        "the lower-branch estimates hold for n >= 1 only");
  }
  check_region_match(region, branch_of(region), arg);
  const mpfr_prec_t p =
      std::max<mpfr_prec_t>(arg.raw().precision(), 96) + kGuardBits;
  switch (region) {
    case Region::gt_e: {
      Iv l1{arg.ell_at(p, Rounding::down), arg.ell_at(p, Rounding::up)};
      return bound_gt_e(l1, n, p).to_precision(
          std::max<mpfr_prec_t>(arg.raw().precision(), 64), Rounding::up);
    }
    case Region::zero_to_e:
      return bound_zero_to_e(n, p).to_precision(
          std::max<mpfr_prec_t>(arg.raw().precision(), 64), Rounding::up);
    case Region::neg_principal:
      return bound_neg_principal(n, p).to_precision(
          std::max<mpfr_prec_t>(arg.raw().precision(), 64), Rounding::up);
    case Region::neg_lower_left:
      return bound_neg_lower(std::nullopt, n, p)
          .to_precision(std::max<mpfr_prec_t>(arg.raw().precision(), 64),
                        Rounding::up);
    case Region::neg_lower_right: {
      Iv x = detail::iv_exact(arg.value_at(p));
      Iv m = detail::iv_ln(detail::iv_neg(x), p);
      Iv b0 = detail::iv_sub(m, detail::iv_ln(detail::iv_neg(m), p), p);
      return bound_neg_lower(b0, n, p).to_precision(
          std::max<mpfr_prec_t>(arg.raw().precision(), 64), Rounding::up);
    }
  }
  throw DomainError("unreachable region");
}

Real beta_error_bound(Region region, unsigned n) {
  if (n == 0 &&
      (region == Region::neg_lower_left ||
       region == Region::neg_lower_right)) {
    throw DomainError(
        "the lower-branch estimates hold for n >= 1 only");
  }
  const mpfr_prec_t p = 128;
  switch (region) {
    case Region::gt_e: return bound_gt_e(std::nullopt, n, p);
    case Region::zero_to_e: return bound_zero_to_e(n, p);
    case Region::neg_principal: return bound_neg_principal(n, p);
    case Region::neg_lower_left:
    case Region::neg_lower_right:
      return bound_neg_lower(std::nullopt, n, p);
  }
  throw DomainError("unreachable region");
}

IterationTrace lambda_iterate(const Real& x, unsigned n) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const mpfr_prec_t pw = x.precision();
  IterationTrace trace{Method::lambda, Region::gt_e, {}};
  trace.entries.reserve(n + 1);

  if (auto w = special_value(Branch::principal, x); w && *w == 1) {
    // Fixed point: every iterate equals 1.
    for (unsigned k = 0; k <= n; ++k) {
      trace.entries.push_back(
          TraceEntry{k, Real(1L, pw), std::nullopt, Real(0L, pw)});
    }
    return trace;
  }
  if (classify(Branch::principal, x) != Region::gt_e) {
    throw DomainError("the lambda recursion requires x > e");
  }

  const Constants& c = cached_constants();
  const bool bounded = x > c.x_triple_star_hi;
  const Real lx = ln(x, Rounding::nearest, pw);
  const Real x_over_e = div(x, const_e(pw), Rounding::nearest, pw);
  const Argument arg = Argument::direct(x);

  Real lam = lx;
  std::optional<Real> odd_max, even_min;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) lam = lx - ln(lam, Rounding::nearest, pw);
    bool ok = lam > 1 && lam < x_over_e;
    if (k % 2 == 0) {
      if (even_min && !(lam < *even_min)) ok = false;
      if (odd_max && !(lam > *odd_max)) ok = false;
      if (ok) even_min = lam;
    } else {
      if (odd_max && !(lam > *odd_max)) ok = false;
      if (even_min && !(lam < *even_min)) ok = false;
      if (ok) odd_max = lam;
    }
    if (!ok) {
      throw NumericalError(
          "sandwich violated at step " + std::to_string(k) +
          ": working precision exhausted, raise the precision");
    }
    std::optional<Real> apriori;
    if (bounded && k % 2 == 0) apriori = lambda_error_bound(x, k / 2);
    trace.entries.push_back(
        TraceEntry{k, lam, std::move(apriori), residual_of(arg, lam, pw)});
  }
  return trace;
}

Real lambda_error_bound(const Real& x, unsigned n) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  const Constants& c = cached_constants();
  if (!(x > c.x_triple_star_hi)) {
    throw DomainError(
        "the lambda estimate needs x above the third crossover constant "
        "(x <= 5.581 cannot be ruled out)");
  }
  const mpfr_prec_t p = x.precision() + kGuardBits;
  Iv l1 = detail::iv_ln(detail::iv_exact(x), p);
  Iv l2 = detail::iv_ln(l1, p);
  Iv diff = detail::iv_sub(l1, l2, p);
  Iv s2 = detail::iv_sqrt(
      detail::iv_mul_2si(detail::iv_const_ln2(p), 1), p);
  Real ratio_hi = div(s2.hi, diff.lo, Rounding::up, p);
  Real powv = pow_si(ratio_hi, 2L * static_cast<long>(n), Rounding::up, p);
  return mul(powv, l2.hi, Rounding::up, p)
      .to_precision(x.precision(), Rounding::up);
}

Real lambda_ratio(const Real& x, unsigned n) {
  if (x.is_nan() || x.is_inf()) throw DomainError("x must be finite");
  if (auto w = special_value(Branch::principal, x); w && *w == 1) {
    throw DomainError("the ratio degenerates to 0/0 at x = e");
  }
  if (classify(Branch::principal, x) != Region::gt_e) {
    throw DomainError("the ratio diagnostic requires x > e");
  }
  const unsigned digits = 34 + 3 * n;
  const mpfr_prec_t pw =
      std::max(bits_for_digits(digits) + 64, x.precision());
  const Real xw = x.to_precision(pw);
  const Real lx = ln(xw, Rounding::nearest, pw);
  Real lam = lx;
  for (unsigned k = 0; k < n; ++k) lam = lx - ln(lam, Rounding::nearest, pw);
  Real lam_next = lx - ln(lam, Rounding::nearest, pw);

  Enclosure enc = eval_certified(Branch::principal, Argument::direct(xw),
                                 digits);
  Real w = mul_2si(enc.lo + enc.hi, -1);
  Real den = w - lam_next;
  if (den.is_zero()) {
    throw NumericalError("ratio denominator vanished at working precision");
  }
  return ((lam - w) / den).to_precision(x.precision());
}

Real reference_step(Method kind, const Real& x, const Real& w) {
  const mpfr_prec_t pw = std::max(x.precision(), w.precision());
  const Real one(1L, pw);
  Real wp1 = add(w, one, Rounding::nearest, pw);
  switch (kind) {
    case Method::newton: {
      if (wp1.is_zero()) throw NumericalError("Newton step needs w != -1");
      return w - (w - x * exp(-w, Rounding::nearest, pw)) / wp1;
    }
    case Method::halley: {
      if (wp1.is_zero()) throw NumericalError("Halley step needs w != -1");
      Real ew = exp(w, Rounding::nearest, pw);
      Real resid = w * ew - x;
      Real den = ew * wp1 - (w + 2) * resid / (mul_2si(wp1, 1));
      if (den.is_zero()) {
        throw NumericalError("Halley denominator vanished");
      }
      return w - resid / den;
    }
    case Method::fsc: {
      if (wp1.is_zero() || w.is_zero()) {
        throw NumericalError("FSC step needs w outside {-1, 0}");
      }
      Real quot = div(x, w, Rounding::nearest, pw);
      if (quot.sign() <= 0) throw NumericalError("x/w must be positive");
      Real z = ln(quot, Rounding::nearest, pw) - w;
      Real q = mul_2si(wp1, 1) * (wp1 + mul_2si(z, 1) / 3);
      Real den = q - mul_2si(z, 1);
      if (den.is_zero()) {
        throw NumericalError("FSC step needs q - 2z != 0");
      }
      return w * (1 + z * (q - z) / (wp1 * den));
    }
    default:
      throw DomainError("reference_step covers newton, halley and fsc");
  }
}

}  // namespace lambertw
