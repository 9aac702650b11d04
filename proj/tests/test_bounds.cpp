#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambertw/bounds.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lambertw;
using testsupport::dec;
using testsupport::oracle_w;
using testsupport::Sampler;

namespace {

bool contains(const BoundsPair& b, const Real& v) {
  return b.lo <= v && v <= b.hi;
}

double d(const Real& v) { return v.to_double(); }

}  // namespace

TEST_CASE("special values snap to the exact points") {
  CHECK(*special_value(Branch::principal, Real(0L, 128)) == 0);
  Real e128 = const_e(224).to_precision(128);
  CHECK(*special_value(Branch::principal, e128) == 1);
  Real nie = (-div(Real(1L, 224), const_e(224), Rounding::nearest))
                 .to_precision(128);
  CHECK(*special_value(Branch::principal, nie) == -1);
  CHECK(*special_value(Branch::lower, nie) == -1);
  CHECK(!special_value(Branch::principal, Real(2L, 128)).has_value());
  CHECK(!special_value(Branch::lower, Real(0L, 128)).has_value());
}

TEST_CASE("simple_bounds on (e, inf): log-log pair") {
  Real x = sqr(const_e(192));  // e^2
  BoundsPair b = simple_bounds(Branch::principal, x);
  CHECK(d(b.lo) == doctest::Approx(2.0 - std::log(2.0)).epsilon(1e-12));
  CHECK(d(b.hi) == doctest::Approx(2.0).epsilon(1e-12));
  Real w = dec("1.55714559899761141685867200000066318", 192);
  CHECK(contains(b, w));
  CHECK(b.lo_source == BoundSource::log_log);
  CHECK(b.hi_source == BoundSource::log_log);
}

TEST_CASE("simple_bounds collapses at x = e") {
  Real e128 = const_e(224).to_precision(128);
  BoundsPair b = simple_bounds(Branch::principal, e128);
  CHECK(b.lo == 1);
  CHECK(b.hi == 1);
  CHECK(b.lo_source == BoundSource::exact_point);
}

TEST_CASE("simple_bounds on (0, e)") {
  BoundsPair b = simple_bounds(Branch::principal, Real(1L, 160));
  CHECK(d(b.lo) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(b.hi == 1);
  CHECK(contains(b, dec("0.56714329040978387299996866221035555", 160)));

  BoundsPair half = simple_bounds(Branch::principal, dec("0.5", 160));
  CHECK(half.hi == dec("0.5", 160));  // min(x, 1) = x below 1
  CHECK(half.hi_source == BoundSource::linear_cap);
}

TEST_CASE("simple_bounds on the negative principal interval") {
  Real x = dec("-0.2", 192);
  BoundsPair b = simple_bounds(Branch::principal, x);
  Real w = dec("-0.25917110181907374505665195021540671", 192);
  CHECK(contains(b, w));
  // The pair sits inside the square-root chain of the (-1/4, 0) lemma.
  CHECK(d(b.lo) == doctest::Approx(-0.27639320225).epsilon(1e-9));
  CHECK(b.hi <= dec("-0.2254033307585166", 192) + dec("1e-12", 64));
  // hi is the iterated seed here, which is tighter than the chain's cap.
  CHECK(d(b.hi) == doctest::Approx(-0.24790511891592).epsilon(1e-9));

  // Farther from zero only the seed pair applies.
  BoundsPair b2 = simple_bounds(Branch::principal, dec("-0.3", 192));
  CHECK(contains(b2, oracle_w(Branch::principal, dec("-0.3", 192), 320)));
}

TEST_CASE("simple_bounds on the lower branch") {
  Real x = dec("-0.1", 192);
  BoundsPair b = simple_bounds(Branch::lower, x);
  CHECK(d(b.lo) == doctest::Approx(-3.6426359827011).epsilon(1e-9));
  CHECK(d(b.hi) == doctest::Approx(-3.1366175382420).epsilon(1e-9));
  CHECK(contains(b, dec("-3.57715206395729721840939196351199488", 192)));
  CHECK(b.lo_source == BoundSource::scaled_log);
  CHECK(b.hi_source == BoundSource::log_log_neg);

  Real q = dec("-0.25", 192);
  BoundsPair bl = simple_bounds(Branch::lower, q);
  CHECK(d(bl.hi) == doctest::Approx(-1.80053674854467).epsilon(1e-9));
  CHECK(d(bl.lo) == doctest::Approx(-2.30053674854467).epsilon(1e-9));
  CHECK(contains(bl, dec("-2.15329236411034964916909915009298138", 192)));
}

TEST_CASE("simple_bounds rejects out-of-domain points") {
  CHECK_THROWS_AS(simple_bounds(Branch::principal, dec("-0.4", 128)),
                  DomainError);
  CHECK_THROWS_AS(simple_bounds(Branch::lower, dec("0.5", 128)), DomainError);
  CHECK_THROWS_AS(simple_bounds(Branch::lower, Real(0L, 128)), DomainError);
}

TEST_CASE("three_term_estimate matches frozen values and the crossover") {
  Real tt100 = three_term_estimate(dec("100", 192));
  CHECK(d(tt100) == doctest::Approx(3.40961340236191246).epsilon(1e-14));
  Real tt1e4 = three_term_estimate(dec("1e4", 192));
  CHECK(d(tt1e4) == doctest::Approx(7.23108248561519272).epsilon(1e-14));
  // Upper bound below x_star, lower bound above it.
  CHECK(tt100 > dec("3.38563014029005018488824436452972687", 192));
  CHECK(tt1e4 < dec("7.23184603809337270647561850014125388", 192));
  // Exact at e.
  Real e128 = const_e(224).to_precision(128);
  CHECK(three_term_estimate(e128) == 1);
  CHECK_THROWS_AS(three_term_estimate(Real(2L, 128)), DomainError);
}

TEST_CASE("refined_bounds_w0 on both sides of the crossover") {
  Real w100 = dec("3.38563014029005018488824436452972687", 192);
  BoundsPair b = refined_bounds_w0(dec("100", 192));
  CHECK(contains(b, w100));
  CHECK(b.hi_source == BoundSource::three_term);
  CHECK(d(b.hi) == doctest::Approx(3.40961340236191246).epsilon(1e-13));

  Real w1e4 = dec("7.23184603809337270647561850014125388", 192);
  BoundsPair b2 = refined_bounds_w0(dec("1e4", 192));
  CHECK(contains(b2, w1e4));
  CHECK(b2.lo_source == BoundSource::three_term);
  CHECK(b2.hi_source == BoundSource::five_term_upper);

  BoundsPair b3 = refined_bounds_w0(dec("1e7", 192));
  CHECK(b3.lo_source == BoundSource::five_term_lower);
  CHECK(contains(b3, oracle_w(Branch::principal, dec("1e7", 192), 320)));

  CHECK_THROWS_AS(refined_bounds_w0(Real(2L, 128)), DomainError);
  Real e128 = const_e(224).to_precision(128);
  BoundsPair be = refined_bounds_w0(e128);
  CHECK(be.lo == 1);
  CHECK(be.hi == 1);
}

TEST_CASE("sampled containment and sharpness versus the older bounds") {
  Sampler rng(20260811);
  const Constants& c = compute_constants(20);
  for (int i = 0; i < 300; ++i) {
    Real x(rng.log_uniform(std::exp(1.0) + 1e-3, 1e10), 192);
    Real w = oracle_w(Branch::principal, x, 320);
    BoundsPair simple = simple_bounds(Branch::principal, x);
    CHECK(simple.lo < w);
    CHECK(w < simple.hi);
    BoundsPair older = older_bounds_w0(x);
    CHECK(older.lo < w);
    CHECK(w < older.hi);
    BoundsPair refined = refined_bounds_w0(x);
    CHECK(refined.lo < w);
    CHECK(w < refined.hi);
    CHECK(refined.hi < older.hi);
    CHECK(refined.lo >= older.lo);
    if (x > c.x_star_hi + 1) CHECK(refined.lo > older.lo);
  }
}

TEST_CASE("sign of the three-term expression crosses exactly at x_star") {
  const Constants& c = compute_constants(20);
  const double xs = mul_2si(c.x_star_lo + c.x_star_hi, -1).to_double();
  Sampler rng(7);
  for (int i = 0; i < 80; ++i) {
    Real x(rng.log_uniform(std::exp(1.0) + 1e-6, xs - 0.01), 192);
    CHECK(three_term_estimate(x, Rounding::down) >
          oracle_w(Branch::principal, x, 320));
  }
  for (int i = 0; i < 80; ++i) {
    Real x(rng.log_uniform(xs + 0.01, 1e10), 192);
    CHECK(three_term_estimate(x, Rounding::up) <
          oracle_w(Branch::principal, x, 320));
  }
}

TEST_CASE("compute_constants reproduces the printed values") {
  Constants c6 = compute_constants(6);
  CHECK(d(c6.x_star_lo) == doctest::Approx(6288.69).epsilon(2e-6));
  CHECK(d(c6.x_star_hi) == doctest::Approx(6288.69).epsilon(2e-6));
  Constants c8 = compute_constants(8);
  CHECK(d(c8.x_double_star_lo) == doctest::Approx(573967.06).epsilon(1e-8));
  Constants c4 = compute_constants(4);
  CHECK(c4.x_triple_star_lo > dec("5.580", 64));
  CHECK(c4.x_triple_star_hi < dec("5.581", 64));
  CHECK(c4.kappa1 > dec("0.31", 64));
  CHECK(c4.kappa1 < dec("0.32", 64));
  CHECK(d(c4.kappa2) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(compute_constants(0), DomainError);
}

TEST_CASE("taylor_w0 partial sums") {
  Real x = dec("0.1", 192);
  Real s5 = taylor_w0(x, 5);
  CHECK(d(s5) == doctest::Approx(0.0912854166666667).epsilon(1e-12));
  CHECK(taylor_w0(Real(0L, 128), 17) == 0);
  Real s50 = taylor_w0(x, 50);
  Real w = dec("0.09127652716086226429989572142317957", 192);
  CHECK(abs(s50 - w) < dec("1e-12", 64));
  CHECK_THROWS_AS(taylor_w0(dec("0.4", 128), 5), DomainError);
  CHECK_THROWS_AS(taylor_w0(dec("-0.5", 128), 5), DomainError);
  CHECK_THROWS_AS(taylor_w0(x, 0), DomainError);
}

TEST_CASE("taylor partial sums alternate around the limit") {
  for (const char* xs : {"0.05", "0.15", "0.25", "0.35"}) {
    Real x = dec(xs, 224);
    Real w = oracle_w(Branch::principal, x, 360);
    for (unsigned k = 1; k <= 12; ++k) {
      Real s = taylor_w0(x, k);
      if (k % 2 == 1) {
        CHECK(s > w);
      } else {
        CHECK(s < w);
      }
    }
  }
}

TEST_CASE("auxiliary inequality grid checks") {
  // y ln y + 1 - y > 0 away from y = 1.
  for (double y : {0.01, 0.2, 0.5, 0.9, 0.99, 1.01, 1.5, 3.0, 10.0, 1e4}) {
    Real yy(y, 128);
    CHECK(yy * ln(yy) + 1 - yy > 0);
  }
  // -z <= ln(1 - z/(2 ln 2)) on [0, ln 2].
  Real ln2 = const_ln2(192);
  for (int k = 0; k <= 32; ++k) {
    Real z = ln2 * k / 32;
    CHECK(-z <= ln(1 - z / (mul_2si(ln2, 1))) + dec("1e-40", 64));
  }
  // L1 - L2 + L2/L1 > L1 - L2 > 1 and the two ratio inequalities.
  Sampler rng(99);
  for (int i = 0; i < 60; ++i) {
    Real x(rng.log_uniform(std::exp(1.0) + 1e-6, 1e10), 192);
    Real l1 = ln(x), l2 = ln(l1);
    CHECK(l1 - l2 > 1);
    CHECK(l1 - l2 + l2 / l1 > l1 - l2);
    Real r = l2 / sqr(l1) - l2 / l1;
    CHECK(r < 0);
    CHECK(r > dec("-0.8", 64));
    Real s = const_e(192) / (const_e(192) - 1) * l2 / l1;
    CHECK(s > 0);
    CHECK(s < 1);
  }
}

TEST_CASE("inductive estimate of ln(x) - W0 against powers of W0") {
  Sampler rng(123);
  for (unsigned m = 1; m <= 8; ++m) {
    Real cap = div(Real(1L, 192), sqrt(Real(2L * m, 192)), Rounding::nearest);
    Real sharper =
        div(Real(1L, 192), Real(static_cast<long>(m), 192) * const_e(192),
            Rounding::nearest);
    for (int i = 0; i < 40; ++i) {
      Real x(rng.log_uniform(std::exp(1.0), 1e8), 192);
      Real w = oracle_w(Branch::principal, x, 320);
      Real lhs = (ln(x) - w) / pow_si(w, static_cast<long>(m));
      CHECK(lhs >= 0);
      CHECK(lhs <= cap);
      CHECK(lhs <= sharper + dec("1e-30", 64));
    }
    // Equality point x = e^(1/m) * exp(e^(1/m)).
    Real em = exp(div(Real(1L, 256), Real(static_cast<long>(m), 256),
                      Rounding::nearest));
    Real xm = em * exp(em);
    Real w = oracle_w(Branch::principal, xm, 400);
    Real lhs = (ln(xm) - w) / pow_si(w, static_cast<long>(m));
    CHECK(abs(lhs - div(Real(1L, 256),
                        Real(static_cast<long>(m), 256) * const_e(256),
                        Rounding::nearest)) < dec("1e-10", 64));
  }
}
