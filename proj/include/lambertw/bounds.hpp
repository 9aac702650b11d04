#ifndef LAMBERTW_BOUNDS_HPP
#define LAMBERTW_BOUNDS_HPP

#include <optional>
#include <string>

#include "lambertw/real.hpp"

namespace lambertw {

// The two real branches: the principal branch maps [-1/e, +inf) onto
// [-1, +inf) increasing; the lower branch maps [-1/e, 0) onto (-inf, -1]
// decreasing.
enum class Branch { principal, lower };

std::string to_string(Branch b);

// Which closed-form family an endpoint came from.
enum class BoundSource {
  exact_point,      // special value at x in {0, e, -1/e}
  log_log,          // ln(x) - ln(ln(x)) and ln(x)
  older_asymptotic, // two-sided ratio-corrected log-log bounds
  three_term,       // ln(x) - ln(ln(x)) + ln(ln(x))/ln(x)
  five_term_upper,  // refined upper estimate beyond the crossover
  five_term_lower,  // refined lower estimate beyond the second crossover
  puiseux_seed,     // -1 + sqrt(1 + e x)
  iterated_seed,    // one recursion step applied to the Puiseux seed
  quarter_chain,    // the (-1/4, 0) square-root chain
  linear_seed,      // x/e on (0, e)
  linear_cap,       // min(x, 1) on (0, e)
  scaled_log,       // e ln(-x) / (e - 1)
  log_log_neg,      // ln(-x) - ln(-ln(-x))
  sqrt2_seed,       // -1 - sqrt(2) sqrt(1 + e x)
  seed_offset,      // lower-branch seed shifted by 1/2
};

std::string to_string(BoundSource s);

// Two-sided closed-form estimate. Both endpoints are outward rounded, so the
// true branch value lies in [lo, hi] whenever the inputs were in range.
struct BoundsPair {
  Real lo;
  Real hi;
  BoundSource lo_source;
  BoundSource hi_source;
};

// The crossover constants. x_star and friends are certified enclosures from
// sign-checked bisection; kappa1 = ln(1 + 1/e) and kappa2 = 1 - 1/e.
struct Constants {
  Real x_star_lo, x_star_hi;
  Real x_double_star_lo, x_double_star_hi;
  Real x_triple_star_lo, x_triple_star_hi;
  Real kappa1;
  Real kappa2;
};

// Exact branch value when x equals the correctly rounded image of a special
// point (0, e, -1/e) at x's own precision; nullopt otherwise. A caller that
// passes such an x is taken to mean the special point itself, since no
// binary float can represent e or -1/e exactly.
std::optional<Real> special_value(Branch branch, const Real& x);

// Closed-form two-sided estimates on the branch's open domain.
// Principal: log-log bounds on (e, inf); [x/e, min(x, 1)] on (0, e); the
// Puiseux seed and iterated seed on (-1/e, 0), intersected with the
// square-root chain on (-1/4, 0). Lower: the scaled-log pair on (-1/4, 0)
// and the shifted seed window on (-1/e, -1/4].
BoundsPair simple_bounds(Branch branch, const Real& x);

// The two-sided ratio-corrected bounds, valid on (e, +inf).
BoundsPair older_bounds_w0(const Real& x);

// ln(x) - ln(ln(x)) + ln(ln(x))/ln(x); an upper bound on W0 below the
// crossover x_star and a lower bound above it.
Real three_term_estimate(const Real& x, Rounding r = Rounding::nearest);

// Refined bounds for x > e: on (e, x*) the three-term upper estimate with
// the ratio-corrected lower bound, past x* the three-term lower estimate
// with the five-term upper one, and past x** the improved five-term lower
// bound.
BoundsPair refined_bounds_w0(const Real& x);

// Certified enclosures of the crossover constants to the requested number of
// correct digits, by bisection seeded with runtime-verified sign checks.
Constants compute_constants(unsigned digits);

// Partial sum of the series about the origin with coefficients
// (-k)^(k-1)/k!, k = 1..terms. Requires |x| < 1/e.
Real taylor_w0(const Real& x, unsigned terms);

}  // namespace lambertw

#endif  // LAMBERTW_BOUNDS_HPP
