#include "lambertw/certify.hpp"

#include <algorithm>
#include <cmath>

#include "interval_util.hpp"

namespace lambertw {

using detail::Iv;

namespace {

constexpr unsigned kMaxIterations = 60;

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(
             std::ceil(static_cast<double>(digits) * 3.321928094887363)) +
         4;
}

// Closed-form seed for the smallest n with C * c^(2^n) < 10^-digits.
unsigned seed_iterations(Region region, unsigned digits) {
  double c;
  switch (region) {
    case Region::gt_e: c = 0.3133; break;          // kappa1
    case Region::zero_to_e: c = 0.6322; break;     // kappa2
    case Region::neg_principal: c = 0.1; break;
    default: c = 0.5; break;
  }
  const double need =
      (static_cast<double>(digits) * std::log(10.0)) / std::log(1.0 / c);
  double n = std::ceil(std::log2(std::max(need, 1.0)));
  if (n < 1.0) n = 1.0;
  if (n > kMaxIterations) n = kMaxIterations;
  return static_cast<unsigned>(n);
}

template <typename BoundFn>
unsigned smallest_sufficient(Region region, unsigned digits, BoundFn bound) {
  const Real target =
      pow10_i(-static_cast<long>(digits), 128, Rounding::down);
  auto sufficient = [&](unsigned n) { return bound(n) < target; };
  unsigned n = seed_iterations(region, digits);
  while (n > 1 && sufficient(n - 1)) --n;
  while (n <= kMaxIterations && !sufficient(n)) ++n;
  if (n > kMaxIterations) {
    throw PrecisionError("no admissible iteration count below the cap");
  }
  return n;
}

struct Orientation {
  bool iterate_below;  // beta_n below the limit (above on neg_principal)
};

Orientation orientation_of(Region region) {
  return {region != Region::neg_principal};
}

// Sign of w e^w - x with outward rounding: +1 / -1 when certain, 0 when the
// enclosing interval straddles zero.
int residual_sign(const Real& w, const Real& x, mpfr_prec_t p) {
  Iv ew = detail::iv_exp(detail::iv_exact(w), p);
  Iv prod = detail::iv_mul(detail::iv_exact(w), ew, p);
  Iv g = detail::iv_sub(prod, detail::iv_exact(x), p);
  if (detail::iv_positive(g)) return +1;
  if (detail::iv_negative(g)) return -1;
  return 0;
}

// Sign of ln w + w - ell for w > 1.
int log_residual_sign(const Real& w, const Real& ell, mpfr_prec_t p) {
  Iv lw = detail::iv_ln(detail::iv_exact(w), p);
  Iv h = detail::iv_sub(detail::iv_add(lw, detail::iv_exact(w), p),
                        detail::iv_exact(ell), p);
  if (detail::iv_positive(h)) return +1;
  if (detail::iv_negative(h)) return -1;
  return 0;
}

Enclosure exact_enclosure(Branch branch, const Real& w) {
  return Enclosure{branch,
                   w,
                   w,
                   Real(0L, w.precision()),
                   EvalMethod::exact_point,
                   0,
                   w.precision(),
                   true};
}

// Runs up to n recursion steps at precision p, stopping once the update
// falls below the rounding noise floor; iterating further would only walk
// the fixed point around in the last bits. The enclosure built from the
// result is validated by the endpoint sign check, which carries the rigor.
Real run_beta(Region region, const Argument& arg, unsigned n, mpfr_prec_t p) {
  Real b = beta_start(region, arg);
  for (unsigned k = 1; k <= n; ++k) {
    Real next = beta_step(arg, b);
    const Real step = abs(sub(next, b, Rounding::nearest, p));
    b = std::move(next);
    if (step <= mul_2si(abs(b), -static_cast<long>(p - 40))) break;
  }
  return b;
}

// Extra bits needed to keep 1 + e x meaningful near the branch point.
mpfr_prec_t branch_point_boost(const Real& x, mpfr_prec_t base) {
  const mpfr_prec_t pe = std::max(base, x.precision()) + 64;
  Real s = 1 + const_e(pe) * x.to_precision(pe);
  if (s.sign() <= 0) {
    throw PrecisionError(
        "x is too close to -1/e for its own precision to resolve");
  }
  mpfr_exp_t e2 = s.exponent2();
  return e2 < 0 ? static_cast<mpfr_prec_t>(-e2) + 16 : 0;
}

}  // namespace

std::string to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::exact_point: return "exact-point";
    case EvalMethod::beta_recursion: return "beta-recursion";
    case EvalMethod::exp_wrapped: return "exp-wrapped";
    case EvalMethod::slope_window: return "slope-window";
  }
  return "?";
}

unsigned required_iterations(Region region, unsigned digits) {
  if (digits == 0) throw DomainError("digits must be positive");
  return smallest_sufficient(region, digits, [&](unsigned n) {
    return beta_error_bound(region, n);
  });
}

unsigned required_iterations(Region region, const Argument& arg,
                             unsigned digits) {
  if (digits == 0) throw DomainError("digits must be positive");
  return smallest_sufficient(region, digits, [&](unsigned n) {
    return beta_error_bound(region, arg, n);
  });
}

Enclosure eval_certified(Branch branch, const Argument& arg, unsigned digits) {
  if (digits == 0) throw DomainError("digits must be positive");

  if (!arg.is_log_form()) {
    if (auto w = special_value(branch, arg.raw())) {
      return exact_enclosure(branch, *w);
    }
  } else if (branch != Branch::principal) {
    throw DomainError("log-form arguments describe x > e on W0 only");
  }

  const Region region = region_of(branch, arg);
  const Orientation orient = orientation_of(region);
  const mpfr_prec_t p_base = bits_for_digits(digits) + 64;

  // Cancellation near the branch point and the sheer magnitude of ell both
  // consume bits; account for them up front.
  mpfr_prec_t boost = 0;
  if (region == Region::neg_principal || region == Region::neg_lower_left) {
    boost = branch_point_boost(arg.raw(), p_base);
  }
  mpfr_prec_t scale = 0;
  if (region == Region::gt_e) {
    Real ell0 = arg.ell_at(std::max<mpfr_prec_t>(arg.raw().precision(), 96));
    mpfr_exp_t e2 = ell0.exponent2();
    if (e2 > 0) scale = static_cast<mpfr_prec_t>(e2);
  } else if (region == Region::neg_lower_right) {
    // |W_-1| grows like |ln(-x)| toward the singular right endpoint.
    Real m = ln(-arg.raw(), Rounding::nearest, 96);
    mpfr_exp_t e2 = m.exponent2();
    if (e2 > 0) scale = static_cast<mpfr_prec_t>(e2);
  }

  const Real target = pow10_i(-static_cast<long>(digits), 128, Rounding::down);

  for (int attempt = 0; attempt < 2; ++attempt) {
    const mpfr_prec_t p =
        std::max<mpfr_prec_t>(((p_base + boost + scale) << attempt),
                              arg.raw().precision());
    const Argument argw = arg.at_precision(p);
    try {
      const unsigned n = required_iterations(region, argw, digits);
      const Real bn = run_beta(region, argw, n, p);
      const Real bound = beta_error_bound(region, argw, n);
      const Real delta =
          mul_2si(abs(bn), -static_cast<long>(p - 48 - boost));

      Real lo(p), hi(p);
      if (orient.iterate_below) {
        lo = sub(bn, delta, Rounding::down, p);
        hi = add(add(bn, bound, Rounding::up, p), delta, Rounding::up, p);
      } else {
        hi = add(bn, delta, Rounding::up, p);
        lo = sub(sub(bn, bound, Rounding::down, p), delta, Rounding::down, p);
      }
      const Real width = sub(hi, lo, Rounding::up, p);
      if (!(width <= target)) continue;

      Enclosure enc{branch, lo,   hi, width, EvalMethod::beta_recursion,
                    n,      p,    true};
      const bool ok = argw.is_log_form()
                          ? verify_enclosure_log(argw.ell_at(p), enc)
                          : verify_enclosure(branch, argw.value_at(p), enc);
      if (ok) return enc;
    } catch (const NumericalError&) {
      // Monotonicity tripped: retry with doubled precision.
    }
  }
  throw CertificationError(
      "could not certify the enclosure even after doubling the precision");
}

bool verify_enclosure(Branch branch, const Real& x, const Enclosure& enc) {
  try {
    if (x.is_nan() || x.is_inf() || enc.lo.is_nan() || enc.hi.is_nan()) {
      return false;
    }
    if (enc.lo > enc.hi) return false;
    if (branch == Branch::principal && enc.lo < -1) return false;
    if (branch == Branch::lower && enc.hi > -1) return false;
    if (auto w = special_value(branch, x)) {
      return enc.lo <= *w && *w <= enc.hi;
    }
    const mpfr_prec_t p =
        std::max({x.precision(), enc.lo.precision(), enc.hi.precision()}) + 64;
    if (branch == Branch::principal) {
      // w e^w increasing on [-1, inf): need g(lo) < 0 < g(hi), certainly.
      return residual_sign(enc.lo, x, p) == -1 &&
             residual_sign(enc.hi, x, p) == +1;
    }
    // w e^w decreasing on (-inf, -1]: signs reversed.
    return residual_sign(enc.lo, x, p) == +1 &&
           residual_sign(enc.hi, x, p) == -1;
  } catch (const Error&) {
    return false;
  }
}

bool verify_enclosure_log(const Real& ell, const Enclosure& enc) {
  try {
    if (ell.is_nan() || enc.lo.is_nan() || enc.hi.is_nan()) return false;
    if (enc.lo > enc.hi) return false;
    if (!(enc.lo > 1)) return false;
    const mpfr_prec_t p =
        std::max({ell.precision(), enc.lo.precision(), enc.hi.precision()}) +
        64;
    return log_residual_sign(enc.lo, ell, p) < 0 &&
           log_residual_sign(enc.hi, ell, p) > 0;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace lambertw
