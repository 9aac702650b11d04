#ifndef LAMBERTW_RECURSIONS_HPP
#define LAMBERTW_RECURSIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lambertw/bounds.hpp"
#include "lambertw/real.hpp"

namespace lambertw {

// The five convergence regions, one per starting-value recipe.
enum class Region {
  gt_e,             // W0, x in (e, +inf)
  zero_to_e,        // W0, x in (0, e)
  neg_principal,    // W0, x in (-1/e, 0)
  neg_lower_left,   // W_-1, x in (-1/e, -1/4]
  neg_lower_right,  // W_-1, x in (-1/4, 0)
};

std::string to_string(Region r);
Branch branch_of(Region r);

// Argument of the evaluation. Large inputs are supplied in logarithmic form
// (ell = ln x, or a power of ten which normalizes to ell = exp10 * ln 10),
// so x itself is never materialized. Log forms are valid only on (e, +inf).
class Argument {
 public:
  enum class Form { direct, log_of, pow10 };

  static Argument direct(Real x);
  static Argument log_of(Real ell);
  static Argument pow10(Real exp10);

  Form form() const { return form_; }
  bool is_log_form() const { return form_ != Form::direct; }
  const Real& raw() const { return raw_; }

  // Direct value, exactly padded to the working precision.
  Real value_at(mpfr_prec_t prec) const;
  // ln x at the working precision; direct form requires x > 0.
  Real ell_at(mpfr_prec_t prec) const;
  Real ell_at(mpfr_prec_t prec, Rounding r) const;
  // An equivalent argument whose stored value carries `prec` bits.
  Argument at_precision(mpfr_prec_t prec) const;

 private:
  Argument(Form f, Real raw) : form_(f), raw_(std::move(raw)) {}
  Form form_;
  Real raw_;
};

enum class Method { lambda, beta, newton, halley, fsc };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct TraceEntry {
  unsigned index;
  Real iterate;
  std::optional<Real> apriori_bound;
  std::optional<Real> residual;
};

struct IterationTrace {
  Method method;
  Region region;
  std::vector<TraceEntry> entries;
};

// Region dispatch on the open branch domains. Special points (0, e, -1/e)
// are handled upstream and rejected here.
Region classify(Branch branch, const Real& x);

// Region of an argument; log forms always mean (e, +inf).
Region region_of(Branch branch, const Argument& arg);

// The region's starting value beta_0.
Real beta_start(Region region, const Argument& arg);

// One step beta -> beta/(1+beta) * (1 + ln(x/beta)).
Real beta_step(const Argument& arg, const Real& beta);

// beta_0..beta_n with the region's monotonicity asserted at every step; a
// violation raises NumericalError (it signals exhausted precision, never a
// silently wrong trace).
IterationTrace beta_iterate(Branch branch, const Argument& arg, unsigned n);

// A priori bound on |W - beta_n|. Uniform over the region; sharpened by the
// x-dependent estimates on (e, +inf) and (-1/4, 0) when `arg` is supplied.
// n = 0 is refused on the lower-branch regions (the theorems need n >= 1).
Real beta_error_bound(Region region, const Argument& arg, unsigned n);
Real beta_error_bound(Region region, unsigned n);

// lambda_0 = ln x, lambda_{k+1} = ln x - ln lambda_k, with the sandwich
// assertions (odd iterates below W0, even iterates above).
IterationTrace lambda_iterate(const Real& x, unsigned n);

// Proven bound on lambda_{2n} - W0, valid for x above the third crossover
// constant; rejects x that cannot be certified to lie above it.
Real lambda_error_bound(const Real& x, unsigned n);

// Finite-n value of (lambda_n - W0)/(W0 - lambda_{n+1}); converges to W0.
// Exposed for any x > e as a diagnostic; nothing is asserted below the
// crossover.
Real lambda_ratio(const Real& x, unsigned n);

// One step of the named classical scheme, exactly as printed. These kernels
// are benchmark references; they take the argument directly.
Real reference_step(Method kind, const Real& x, const Real& w);

}  // namespace lambertw

#endif  // LAMBERTW_RECURSIONS_HPP
