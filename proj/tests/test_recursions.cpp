#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "lambertw/recursions.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lambertw;
using testsupport::dec;
using testsupport::oracle_w;
using testsupport::Sampler;

namespace {

double d(const Real& v) { return v.to_double(); }

Real e_at(mpfr_prec_t p) { return const_e(p + 96).to_precision(p); }

mpfr_prec_t bits_for(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887363)) + 8;
}

}  // namespace

TEST_CASE("classify dispatches over the five regions") {
  CHECK(classify(Branch::principal, Real(10L, 128)) == Region::gt_e);
  CHECK(classify(Branch::principal, dec("0.5", 128)) == Region::zero_to_e);
  CHECK(classify(Branch::principal, dec("-0.2", 128)) ==
        Region::neg_principal);
  CHECK(classify(Branch::lower, dec("-0.25", 128)) == Region::neg_lower_left);
  CHECK(classify(Branch::lower, dec("-0.1", 128)) == Region::neg_lower_right);
  CHECK_THROWS_AS(classify(Branch::lower, dec("0.5", 128)), DomainError);
  CHECK_THROWS_AS(classify(Branch::principal, dec("-0.4", 128)), DomainError);
  CHECK_THROWS_AS(classify(Branch::principal, e_at(128)), DomainError);
  CHECK_THROWS_AS(classify(Branch::principal, Real(0L, 128)), DomainError);
}

TEST_CASE("beta_start matches the region formulas") {
  Real one_e = beta_start(Region::zero_to_e, Argument::direct(Real(1L, 192)));
  CHECK(d(one_e) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  Real x = -3 / (4 * const_e(192));
  Real s = beta_start(Region::neg_principal, Argument::direct(x));
  CHECK(d(s) == doctest::Approx(-std::log(1.5)).epsilon(1e-13));

  Real r = beta_start(Region::neg_lower_right,
                      Argument::direct(dec("-0.1", 192)));
  CHECK(d(r) == doctest::Approx(-3.13661753824200148).epsilon(1e-13));

  Real l = beta_start(Region::neg_lower_left,
                      Argument::direct(dec("-0.25", 192)));
  CHECK(d(l) == doctest::Approx(-1.80053674854467323).epsilon(1e-13));

  Real g = beta_start(Region::gt_e, Argument::log_of(Real(5L, 192)));
  CHECK(d(g) == doctest::Approx(5.0 - std::log(5.0)).epsilon(1e-14));

  CHECK_THROWS_AS(
      beta_start(Region::gt_e, Argument::direct(Real(1L, 128))), DomainError);
  CHECK_THROWS_AS(
      beta_start(Region::zero_to_e, Argument::direct(Real(7L, 128))),
      DomainError);
}

TEST_CASE("beta_step fixed point, one step from 1/e, excluded denominator") {
  Real e = e_at(192);
  CHECK(abs(beta_step(Argument::direct(e), Real(1L, 192)) - 1) <
        dec("1e-50", 64));

  Real b1 = beta_step(Argument::direct(Real(1L, 192)),
                      div(Real(1L, 192), const_e(192), Rounding::nearest));
  CHECK(d(b1) == doctest::Approx(2.0 / (std::exp(1.0) + 1)).epsilon(1e-14));

  Real nie = (-div(Real(1L, 288), const_e(288), Rounding::nearest))
                 .to_precision(192);
  CHECK_THROWS_AS(beta_step(Argument::direct(nie), Real(-1L, 192)),
                  NumericalError);
}

TEST_CASE("beta_iterate traces the documented examples") {
  // x = e^(e+1), whose principal value is exactly e.
  Real x = exp(const_e(256) + 1, Rounding::nearest, 256);
  IterationTrace t =
      beta_iterate(Branch::principal, Argument::direct(x), 1);
  CHECK(t.region == Region::gt_e);
  CHECK(d(t.entries[0].iterate) ==
        doctest::Approx(2.40502014094082240).epsilon(1e-13));
  CHECK(t.entries[1].iterate > t.entries[0].iterate);
  CHECK(t.entries[1].iterate < const_e(256));

  IterationTrace u =
      beta_iterate(Branch::principal, Argument::direct(Real(1L, 192)), 2);
  CHECK(d(u.entries[0].iterate) == doctest::Approx(0.3678794411714423).epsilon(1e-13));
  CHECK(d(u.entries[1].iterate) == doctest::Approx(0.5378828427399902).epsilon(1e-13));
  CHECK(d(u.entries[2].iterate) == doctest::Approx(0.5666438120958665).epsilon(1e-13));
  CHECK(u.entries[2].iterate < dec("0.56714329040978388", 192));

  // x = -2 e^-2, whose lower value is exactly -2.
  Real xl = div(Real(-2L, 256), sqr(const_e(256)), Rounding::nearest);
  IterationTrace v = beta_iterate(Branch::lower, Argument::direct(xl), 3);
  CHECK(v.region == Region::neg_lower_left);
  for (unsigned k = 1; k <= 3; ++k) {
    CHECK(v.entries[k].iterate < dec("-1.999999999", 64));
    if (k > 1) CHECK(v.entries[k].iterate > v.entries[k - 1].iterate);
  }
  CHECK(v.entries[3].iterate > dec("-2.01", 64));
  // The n = 0 entry on the lower branch carries no a priori bound.
  CHECK(!v.entries[0].apriori_bound.has_value());
  CHECK(v.entries[3].apriori_bound.has_value());
}

TEST_CASE("beta_iterate flags exhausted precision instead of looping") {
  CHECK_THROWS_AS(
      beta_iterate(Branch::principal, Argument::direct(Real(10L, 64)), 40),
      NumericalError);
}

TEST_CASE("beta_error_bound reproduces the printed estimates") {
  Argument a = Argument::direct(Real(100L, 128));
  Real b5 = beta_error_bound(Region::gt_e, 5);
  CHECK(b5 < dec("8e-17", 64));
  CHECK(b5 > dec("7e-17", 64));
  Real b10 = beta_error_bound(Region::gt_e, 10);
  CHECK(b10 < dec("7e-517", 64));
  Real np3 = beta_error_bound(Region::neg_principal, 3);
  CHECK(d(np3) == doctest::Approx(1e-8).epsilon(1e-9));
  CHECK(beta_error_bound(Region::zero_to_e, 1) <
        dec("0.127", 64));  // (1/5) kappa2
  CHECK_THROWS_AS(beta_error_bound(Region::neg_lower_left, 0), DomainError);
  CHECK_THROWS_AS(beta_error_bound(Region::neg_lower_right, 0), DomainError);
  CHECK(beta_error_bound(Region::gt_e, a, 5) <= b5);
  // the sharper (-1/4, 0) estimate beats the uniform one
  Argument r = Argument::direct(dec("-0.1", 128));
  CHECK(beta_error_bound(Region::neg_lower_right, r, 2) <
        beta_error_bound(Region::neg_lower_right, 2));
}

TEST_CASE("lambda_iterate: explicit first steps and the fixed point") {
  Real x = sqr(const_e(256));
  IterationTrace t = lambda_iterate(x, 1);
  CHECK(d(t.entries[0].iterate) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d(t.entries[1].iterate) ==
        doctest::Approx(2.0 - std::log(2.0)).epsilon(1e-14));

  IterationTrace fixed = lambda_iterate(e_at(192), 7);
  for (const TraceEntry& e : fixed.entries) CHECK(e.iterate == 1);

  CHECK_THROWS_AS(lambda_iterate(Real(2L, 128), 3), DomainError);
}

TEST_CASE("lambda gaps shrink and sandwich the limit") {
  Real x(100L, 256);
  IterationTrace t = lambda_iterate(x, 6);
  auto it = [&](unsigned k) { return t.entries[k].iterate; };
  CHECK(it(6) - it(5) < it(4) - it(3));
  CHECK(it(4) - it(3) < it(2) - it(1));
  Real w = oracle_w(Branch::principal, x, 360);
  CHECK(it(1) < w);
  CHECK(it(3) < w);
  CHECK(it(5) < w);
  CHECK(w < it(6));
  CHECK(w < it(4));
  CHECK(w < it(2));
  CHECK(w < it(0));
}

TEST_CASE("lambda_error_bound frozen values and domain gate") {
  Real xee = exp(const_e(256), Rounding::nearest, 256);  // e^e
  Real b1 = lambda_error_bound(xee, 1);
  CHECK(d(b1) == doctest::Approx(0.46953358504617415).epsilon(1e-9));
  Real b0 = lambda_error_bound(xee, 0);
  CHECK(d(b0) == doctest::Approx(1.0).epsilon(1e-12));

  Real x(100L, 256);
  IterationTrace t = lambda_iterate(x, 6);
  Real w = oracle_w(Branch::principal, x, 360);
  CHECK(lambda_error_bound(x, 3) >= t.entries[6].iterate - w);
  CHECK(t.entries[6].iterate - w > 0);

  CHECK_THROWS_AS(lambda_error_bound(dec("5.5", 128), 2), DomainError);
  CHECK_THROWS_AS(lambda_error_bound(Real(2L, 128), 2), DomainError);
}

TEST_CASE("lambda_ratio approaches the branch value") {
  Real r100 = lambda_ratio(Real(100L, 192), 8);
  CHECK(std::abs(d(r100) - 3.38563014029005018) < 1e-3);
  Real r1e6 = lambda_ratio(dec("1e6", 192), 6);
  CHECK(std::abs(d(r1e6) - 11.3833580861400526) < 1e-4);
  CHECK_THROWS_AS(lambda_ratio(e_at(192), 4), DomainError);
}

TEST_CASE("reference steps hold their fixed point at x = e, w = 1") {
  Real e = e_at(256);
  Real one(1L, 256);
  for (Method m : {Method::newton, Method::halley, Method::fsc}) {
    Real next = reference_step(m, e, one);
    CHECK(abs(next - 1) < dec("1e-60", 64));
  }
  CHECK_THROWS_AS(reference_step(Method::newton, e, Real(-1L, 256)),
                  NumericalError);
  CHECK_THROWS_AS(reference_step(Method::halley, e, Real(-1L, 256)),
                  NumericalError);
  CHECK_THROWS_AS(reference_step(Method::fsc, e, Real(0L, 256)),
                  NumericalError);
  CHECK_THROWS_AS(reference_step(Method::lambda, e, one), DomainError);
}

TEST_CASE("quadratic contraction against the oracle") {
  Sampler rng(42);
  // Checked while the residual error stays well above the rounding floor of
  // the 320-bit working precision.
  const Real floor_ = dec("1e-70", 64);
  for (int i = 0; i < 40; ++i) {
    Real x(rng.log_uniform(std::exp(1.0) + 0.01, 1e8), 320);
    Real w = oracle_w(Branch::principal, x, 480);
    IterationTrace t =
        beta_iterate(Branch::principal, Argument::direct(x), 5);
    for (unsigned n = 0; n < 5; ++n) {
      Real en = w - t.entries[n].iterate;
      Real en1 = w - t.entries[n + 1].iterate;
      if (!(en1 > floor_)) break;
      CHECK(en1 < sqr(en) / ((1 + t.entries[n].iterate) * w));
    }
  }
  for (int i = 0; i < 40; ++i) {
    Real x(rng.uniform(-0.3678, -1e-4), 320);
    Real w = oracle_w(Branch::principal, x, 480);
    IterationTrace t =
        beta_iterate(Branch::principal, Argument::direct(x), 4);
    for (unsigned n = 0; n < 4; ++n) {
      Real en = t.entries[n].iterate - w;
      Real en1 = t.entries[n + 1].iterate - w;
      if (!(en1 > floor_)) break;
      CHECK(en1 < sqr(en) / ((1 + t.entries[n].iterate) * (-w)));
    }
  }
}

TEST_CASE("a priori bounds dominate the observed errors") {
  Sampler rng(1234);
  struct Plan {
    Region region;
    Branch branch;
  };
  const Plan plans[] = {
      {Region::gt_e, Branch::principal},
      {Region::zero_to_e, Branch::principal},
      {Region::neg_principal, Branch::principal},
      {Region::neg_lower_left, Branch::lower},
      {Region::neg_lower_right, Branch::lower},
  };
  int checked = 0;
  for (const Plan& plan : plans) {
    for (int i = 0; i < 40; ++i) {
      const unsigned n = 1 + (i % 8);
      double xd;
      switch (plan.region) {
        case Region::gt_e: xd = rng.log_uniform(2.72, 1e9); break;
        case Region::zero_to_e: xd = rng.uniform(1e-6, 2.718); break;
        case Region::neg_principal: xd = rng.uniform(-0.367, -1e-6); break;
        case Region::neg_lower_left: xd = rng.uniform(-0.367, -0.2501); break;
        default: xd = -rng.log_uniform(1e-12, 0.2499); break;
      }
      // Work at a precision that can actually observe the bound for this n.
      Argument probe = Argument::direct(Real(xd, 128));
      if (region_of(plan.branch, probe) != plan.region) continue;
      Real bound_est = beta_error_bound(plan.region, probe, n);
      long need = 40;
      if (!bound_est.is_zero()) {
        need += std::max<long>(0, -bound_est.exponent2());
      }
      const mpfr_prec_t p = static_cast<mpfr_prec_t>(need) + 64;
      Real x(xd, p);
      Argument arg = Argument::direct(x);
      Real w = oracle_w(plan.branch, x, 4 * p);
      // Run by hand with a noise-floor stop: past it the exact sequence is
      // even closer to the limit than the last distinguishable iterate.
      Real b = beta_start(plan.region, arg);
      for (unsigned k = 1; k <= n; ++k) {
        Real next = beta_step(arg, b);
        Real step = abs(next - b);
        b = std::move(next);
        if (step <= mul_2si(abs(b), -static_cast<long>(p - 40))) break;
      }
      Real err = abs(w - b);
      CHECK(err < beta_error_bound(plan.region, arg, n));
      ++checked;
    }
  }
  CHECK(checked >= 180);
}

TEST_CASE("direct and logarithmic forms agree step by step") {
  for (const char* xs : {"10", "1e5", "1e100"}) {
    Real x = dec(xs, 1024);
    Argument direct = Argument::direct(x);
    Argument logform = Argument::log_of(ln(x, Rounding::nearest, 1024));
    IterationTrace a = beta_iterate(Branch::principal, direct, 6);
    IterationTrace b = beta_iterate(Branch::principal, logform, 6);
    for (unsigned k = 0; k <= 6; ++k) {
      CHECK(testsupport::rel_gap(a.entries[k].iterate,
                                 b.entries[k].iterate) < 1e-100);
    }
  }
}

TEST_CASE("classical schemes seeded with beta_0 converge; FSC beats Newton") {
  const mpfr_prec_t p = 256;
  const Real tol = dec("1e-20", 64);
  for (double xd : {5.0, 50.0, 1e4, 0.5, 1.5, 2.5}) {
    Real x(xd, p);
    const Region region = classify(Branch::principal, x);
    auto steps_to_tol = [&](Method m) {
      Real w = beta_start(region, Argument::direct(x));
      for (unsigned k = 0; k < 60; ++k) {
        if (abs(w * exp(w) - x) < tol) return k;
        w = reference_step(m, x, w);
      }
      return 60u;
    };
    const unsigned newton = steps_to_tol(Method::newton);
    const unsigned halley = steps_to_tol(Method::halley);
    const unsigned fsc = steps_to_tol(Method::fsc);
    CHECK(newton < 60);
    CHECK(halley < 60);
    CHECK(fsc < 60);
    CHECK(fsc <= newton);
  }
}
