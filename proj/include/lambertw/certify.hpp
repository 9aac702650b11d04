#ifndef LAMBERTW_CERTIFY_HPP
#define LAMBERTW_CERTIFY_HPP

#include <string>

#include "lambertw/bounds.hpp"
#include "lambertw/real.hpp"
#include "lambertw/recursions.hpp"

namespace lambertw {

enum class EvalMethod {
  exact_point,     // special value, zero width
  beta_recursion,  // iterate plus a priori bound, sign-checked
  exp_wrapped,     // monotone wrapper around another enclosure
  slope_window,    // local slope window around a known point
};

std::string to_string(EvalMethod m);

// A certified interval for a branch value. lo <= true value <= hi whenever
// certified is true; the endpoints are outward rounded at precision_bits.
struct Enclosure {
  Branch branch;
  Real lo;
  Real hi;
  Real width_bound;
  EvalMethod method;
  unsigned iterations;
  mpfr_prec_t precision_bits;
  bool certified;
};

// Smallest n whose a priori bound falls below 10^-digits. The overload
// without an argument uses the region's uniform estimate alone; with an
// argument the x-dependent sharpenings apply.
unsigned required_iterations(Region region, unsigned digits);
unsigned required_iterations(Region region, const Argument& arg,
                             unsigned digits);

// Runs the recursion for the n chosen from the theorems at elevated
// precision, places the iterate on the proven side of the limit, widens by
// the a priori bound plus a rounding allowance, and verifies the result by
// endpoint sign checks. The working precision is raised automatically near
// the branch point, and doubled once if certification fails.
//
// Log-form and pow10 arguments are normalized to ell = ln x at working
// precision; the certified value is then W0(e^ell) for that rendered ell.
Enclosure eval_certified(Branch branch, const Argument& arg, unsigned digits);

// Rigorous a-posteriori check: the signs of w e^w - x at the endpoints,
// evaluated with outward rounding, must bracket zero in the direction given
// by the branch's monotonicity. False on any ambiguity, never an exception.
bool verify_enclosure(Branch branch, const Real& x, const Enclosure& enc);

// Same check in logarithmic form: ln w + w compared against ell, valid for
// the principal branch with w > 1.
bool verify_enclosure_log(const Real& ell, const Enclosure& enc);

}  // namespace lambertw

#endif  // LAMBERTW_CERTIFY_HPP
